//! Norm of a linear map over the unit sphere.

use ncq::linear::{map_norm, std_to_coord, PairRep};
use ncq::parse::parse_element;
use ncq::AlgebraSpec;

fn main() -> ncq::Result<()> {
    let h = AlgebraSpec::quaternion();
    let a = parse_element("1 + i", &h)?;
    let b = parse_element("2j", &h)?;
    let f = PairRep::new(vec![(a.clone(), b.clone())]);
    let m = std_to_coord(&f.to_std(&h)?, &h)?;
    println!("|x -> (1+i) x 2j| = {:.6}", map_norm(&m, &h)?);
    println!("|1+i| |2j| = {:.6}", (2f64).sqrt() * 2.0);

    let g = PairRep::new(vec![(h.unit().clone(), h.unit().clone()), (h.basis(1), h.basis(2))]);
    let m = std_to_coord(&g.to_std(&h)?, &h)?;
    println!("|x -> x + i x j| = {:.6}", map_norm(&m, &h)?);
    Ok(())
}
