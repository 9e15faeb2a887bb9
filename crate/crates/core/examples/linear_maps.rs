//! Three representations of the same linear map and how they convert.

use ncq::linear::{compose_std, coord_to_std, generated_coords, std_to_coord, transform_coords, GeneratedMap, PairRep};
use ncq::parse::parse_element;
use ncq::{AlgebraSpec, Matrix, Var};

fn main() -> ncq::Result<()> {
    let h = AlgebraSpec::quaternion();
    let i = h.basis(1);
    let j = h.basis(2);
    let k = h.basis(3);

    // x -> i x j + k x
    let f = PairRep::new(vec![(i.clone(), j.clone()), (k.clone(), h.unit().clone())]);
    println!("f(x) = {}", f.to_poly(Var::X).to_text(&h));
    let std = f.to_std(&h)?;
    println!("standard components:\n{}", std.0);
    let m = std_to_coord(&std, &h)?;
    println!("coordinate matrix:\n{}", m.0);
    println!("back to standard components: {}", coord_to_std(&m, &h)? == std);

    let x = parse_element("2 - i + 3k", &h)?;
    println!("f(x) from pairs       {}", h.format(&f.apply(&x, &h)?));
    println!("f(x) from components  {}", h.format(&std.apply(&x, &h)?));
    println!("f(x) from coordinates {}", h.format(&m.apply(&x, &h)?));

    let g = PairRep::new(vec![(j.clone(), i.clone())]).to_std(&h)?;
    let gf = compose_std(&g, &std, &h)?;
    println!("\ng(f(x)) = {}", h.format(&g.apply(&std.apply(&x, &h)?, &h)?));
    println!("(g o f)(x) = {}", h.format(&gf.apply(&x, &h)?));

    // x -> i x i as generator, then f applied on top of it
    let generator = std_to_coord(&PairRep::new(vec![(i.clone(), i.clone())]).to_std(&h)?, &h)?;
    let generated = GeneratedMap {
        generator,
        components: std.clone(),
    };
    println!(
        "\nf over the generator x -> i x i:\n{}",
        generated_coords(&generated, &h)?.0
    );
    println!("value at x: {}", h.format(&generated.apply(&x, &h)?));

    let a = Matrix::from_i64(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
    println!("coordinates in the basis rows of A:\n{}", transform_coords(&m, &a)?.0);
    Ok(())
}
