//! Symbolic derivatives of noncommutative polynomials.

use ncq::gateaux::{
    d_star, derive, derive_all_equal, derive_by_injections, derive_n, eval_differential, jacobian, star_d,
};
use ncq::parse::{parse_element, parse_poly};
use ncq::poly::{is_symmetric, semantic_eq};
use ncq::{AlgebraSpec, Var};

fn main() -> ncq::Result<()> {
    let h = AlgebraSpec::quaternion();
    let p = parse_poly("i*x^2*j + x*k*x", &h)?;
    println!("p(x) = {}", p.to_text(&h));

    let d1 = derive(&p)?;
    println!("dp(x)(h1) = {}", d1.poly.simplified().to_text(&h));
    let d2 = derive_n(&p, 2)?;
    println!("d2p(x)(h1; h2) = {}", d2.poly.simplified().to_text(&h));
    println!("symmetric in h1, h2: {}", is_symmetric(&d2.poly, &d2.increments(), &h));
    println!("d3p = 0: {}", derive_n(&p, 3)?.poly.simplified().is_empty());

    let cubic = parse_poly("x*i*x*j*x", &h)?;
    let a = derive_n(&cubic, 3)?;
    let b = derive_by_injections(&cubic, 3)?;
    println!(
        "\nthird derivative of {}: {} words, injection count agrees: {}",
        cubic.to_text(&h),
        a.poly.len(),
        semantic_eq(&a.poly, &b.poly, &h)
    );
    let diag = derive_all_equal(&cubic, 3, Var::H(1))?;
    println!("d3 with equal increments: {}", diag.simplified().to_text(&h));

    let x = parse_element("1 + i", &h)?;
    let dir = parse_element("1 - j + 2k", &h)?;
    println!("\nat x = {}, along {}:", h.format(&x), h.format(&dir));
    println!("dp = {}", h.format(&eval_differential(&d1, &x, &dir, &h)?));
    println!("D*p = {}", h.format(&d_star(&d1, &x, &dir, &h)?));
    println!("*Dp = {}", h.format(&star_d(&d1, &x, &dir, &h)?));
    println!("jacobian:\n{}", jacobian(&d1, &x, &h)?.0);
    Ok(())
}
