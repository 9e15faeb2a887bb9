//! Arithmetic in the complex numbers, the quaternions and `E(a, b)`.

use ncq::parse::parse_element;
use ncq::scalar::rat;
use ncq::{AlgebraSpec, Matrix};

fn main() -> ncq::Result<()> {
    let h = AlgebraSpec::quaternion();
    let x = parse_element("1 + 2i - j", &h)?;
    let y = parse_element("3j + 1/2k", &h)?;
    println!("x = {}", h.format(&x));
    println!("y = {}", h.format(&y));
    println!("xy = {}", h.format(&h.mul(&x, &y)?));
    println!("yx = {}", h.format(&h.mul(&y, &x)?));
    println!("conj(x) = {}", h.format(&h.conj(&x)?));
    println!("|x|^2 = {}", h.abs_sq(&x)?);
    println!("x^-1 = {}", h.format(&h.inverse(&x)?));

    let c = AlgebraSpec::complex();
    let z = parse_element("3 + 4i", &c)?;
    println!("\n(3+4i)^-1 = {}", c.format(&c.inverse(&z)?));

    let e = AlgebraSpec::efab(rat(-2, 1), rat(-3, 1))?;
    let i = e.basis(1);
    let j = e.basis(2);
    println!(
        "\nin {}: i^2 = {}, j^2 = {}, ij = {}, ji = {}",
        e.name(),
        e.format(&e.mul(&i, &i)?),
        e.format(&e.mul(&j, &j)?),
        e.format(&e.mul(&i, &j)?),
        e.format(&e.mul(&j, &i)?)
    );
    println!("division algebra: {}", e.is_division());
    println!(
        "efab:1/1 division algebra: {}",
        AlgebraSpec::by_name("efab:1/1")?.is_division()
    );

    let a = Matrix::from_i64(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 1]]);
    let moved = h.change_basis(&a)?;
    let u = moved.basis(0);
    println!(
        "\nafter a change of basis the old unit 1 has new coordinates {:?}",
        moved.unit().coords().iter().map(|c| c.to_string()).collect::<Vec<_>>()
    );
    println!(
        "e'_0 e'_0 = {:?}",
        moved
            .mul(&u, &u)?
            .coords()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
    );
    Ok(())
}
