//! Quaternion conjugation written as a polynomial.

use std::collections::HashMap;

use ncq::gateaux::{derive, differential_std_components, jacobian};
use ncq::parse::{parse_element, parse_poly};
use ncq::{AlgebraSpec, Var};

fn main() -> ncq::Result<()> {
    let h = AlgebraSpec::quaternion();
    let p = parse_poly("-1/2*(x + i*x*i + j*x*j + k*x*k)", &h)?;
    let from_conj = parse_poly("conj(x)", &h)?;
    println!("p(x) = {}", p.to_text(&h));
    println!("conj(x) lowers to {}", from_conj.to_text(&h));

    let x = parse_element("3 - i + 2j - 5/7k", &h)?;
    let value = p.eval(&HashMap::from([(Var::X, x.clone())]), &h)?;
    println!("p({}) = {}", h.format(&x), h.format(&value));
    println!("conj = {}", h.format(&h.conj(&x)?));

    let d = derive(&p)?;
    println!("jacobian:\n{}", jacobian(&d, &x, &h)?.0);
    println!("standard components:\n{}", differential_std_components(&d, &x, &h)?.0);
    Ok(())
}
