//! Linear maps of the complex numbers satisfy the Cauchy-Riemann equations.

use ncq::linear::CrCheck;
use ncq::linear::{cauchy_riemann_check, coord_to_std, std_to_coord, CoordMatrix, StdComponents};
use ncq::scalar::display;
use ncq::{AlgebraSpec, Matrix};

fn report(m: &CoordMatrix) -> ncq::Result<()> {
    match cauchy_riemann_check(m)? {
        CrCheck::Satisfied => println!("Cauchy-Riemann equations hold"),
        CrCheck::Violated { residuals } => println!(
            "violated: m00 - m11 = {}, m01 + m10 = {}",
            display(&residuals[0]),
            display(&residuals[1])
        ),
    }
    Ok(())
}

fn main() -> ncq::Result<()> {
    let c = AlgebraSpec::complex();
    let f = StdComponents(Matrix::from_i64(&[&[1, 2], &[-3, 5]]));
    let m = std_to_coord(&f, &c)?;
    println!("coordinate matrix:\n{}", m.0);
    report(&m)?;

    let conj = CoordMatrix(Matrix::from_i64(&[&[1, 0], &[0, -1]]));
    println!("\nconjugation:\n{}", conj.0);
    report(&conj)?;
    match coord_to_std(&conj, &c) {
        Ok(s) => println!("unexpected components\n{}", s.0),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
