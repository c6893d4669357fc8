use std::fmt::Write;

use num_traits::{One, Signed, Zero};
use polygenocchi::families::FamilyExpansion;
use polygenocchi::rational::format_rational;
use polygenocchi::{Poly, Rational};

/// `n,deg,c0,c1,...`; the zero polynomial is written as degree 0 with a
/// single zero coefficient.
pub fn csv(exp: &FamilyExpansion) -> String {
    let width = exp
        .polys
        .iter()
        .map(|p| p.coeffs().len())
        .max()
        .unwrap_or(1)
        .max(1);
    let mut out = String::from("n,deg");
    for i in 0..width {
        write!(out, ",c{i}").unwrap();
    }
    out.push('\n');
    for (n, p) in exp.polys.iter().enumerate() {
        write!(out, "{n},{}", p.degree().unwrap_or(0)).unwrap();
        if p.is_zero() {
            out.push_str(",0");
        }
        for c in p.coeffs() {
            write!(out, ",{}", format_rational(c)).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn json(exp: &FamilyExpansion) -> String {
    let mut s = serde_json::to_string_pretty(exp).expect("expansion serializes");
    s.push('\n');
    s
}

pub fn latex(exp: &FamilyExpansion) -> String {
    let mut out = String::from("\\begin{aligned}\n");
    for (n, p) in exp.polys.iter().enumerate() {
        writeln!(out, "P_{{{n}}}(x) &= {} \\\\", latex_poly(p)).unwrap();
    }
    out.push_str("\\end{aligned}\n");
    out
}

fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

/// Terms from high to low degree, e.g. `2x - 1`.
pub fn latex_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let first = out.is_empty();
        match (first, c.is_negative()) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        let mag = c.abs();
        let var = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{{{i}}}"),
        };
        if !mag.is_one() || i == 0 {
            out.push_str(&latex_rational(&mag));
        }
        out.push_str(&var);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use polygenocchi::rational::{int, rat};

    #[test]
    fn latex_terms() {
        let p = Poly::from_coeffs(vec![int(-1), int(2)]);
        assert_eq!(latex_poly(&p), "2x - 1");
        let p = Poly::from_coeffs(vec![rat(1, 2), int(0), int(-1), rat(-3, 4)]);
        assert_eq!(latex_poly(&p), "-\\frac{3}{4}x^{3} - x^{2} + \\frac{1}{2}");
        assert_eq!(latex_poly(&Poly::zero()), "0");
    }
}
