//! The exponent defined by `dy(h) = (y h + h y) / 2`.

use ncq::numeric;
use ncq::parse::parse_element;
use ncq::taylor::{exp_additivity_defect, exp_series, exponent_derivative, exponent_taylor};
use ncq::AlgebraSpec;

fn main() -> ncq::Result<()> {
    let h = AlgebraSpec::quaternion();
    println!("d2y = {}", exponent_derivative(2, &h)?.to_text(&h));
    for n in [1, 4, 10] {
        println!("terms in d{n}y: {}", exponent_derivative(n, &h)?.simplified().len());
    }
    println!(
        "Taylor polynomial of degree 4: {}",
        exponent_taylor(4, &h)?.assemble(&h).to_text(&h)
    );

    let e = exp_series(&[0.0, 1.0, 0.0, 0.0], 30, &h)?;
    println!("\nexp(i) = {e:?}");
    println!("cos 1, sin 1 = {:?}", [1f64.cos(), 1f64.sin()]);

    let ei = exp_series(&[0.0, 1.0, 0.0, 0.0], 30, &h)?;
    let ej = exp_series(&[0.0, 0.0, 1.0, 0.0], 30, &h)?;
    let eij = exp_series(&[0.0, 1.0, 1.0, 0.0], 30, &h)?;
    let gap = numeric::norm(&numeric::sub(&eij, &numeric::mul(&h, &ei, &ej)));
    println!("|exp(i+j) - exp(i)exp(j)| = {gap:.4}");

    for (a, b) in [("i", "j"), ("i", "2i"), ("1 + j", "3j")] {
        let d = exp_additivity_defect(&parse_element(a, &h)?, &parse_element(b, &h)?, &h)?;
        println!("cubic defect for ({a}, {b}): {}", h.format(&d));
    }
    Ok(())
}
