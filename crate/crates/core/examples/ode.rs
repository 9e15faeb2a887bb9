//! Differential equations `dy(x)(h) = rhs(x; h)` solved by repeated differentiation.

use ncq::parse::{parse_element, parse_poly};
use ncq::taylor::{solve_ode, OdeOutcome, OdeProblem, Unsolvable};
use ncq::AlgebraSpec;

fn solve(rhs: &str, x0: &str, y0: &str, alg: &AlgebraSpec) -> ncq::Result<()> {
    let problem = OdeProblem::new(parse_poly(rhs, alg)?, parse_element(x0, alg)?, parse_element(y0, alg)?)?;
    print!("dy(h) = {rhs}, y({x0}) = {y0}: ");
    match solve_ode(&problem, 24, alg)? {
        OdeOutcome::Solution { y, .. } => println!("y = {}", y.to_text(alg)),
        OdeOutcome::Unsolvable(Unsolvable::Asymmetric { order, swapped, .. }) => {
            println!(
                "no solution, order {order} derivative changes under {} <-> {}",
                swapped.0, swapped.1
            )
        }
        OdeOutcome::Unsolvable(other) => println!("no solution: {other:?}"),
    }
    Ok(())
}

fn main() -> ncq::Result<()> {
    let h = AlgebraSpec::quaternion();
    solve("h*x^2 + x*h*x + x^2*h", "0", "0", &h)?;
    solve("3*h*x^2", "0", "0", &h)?;
    solve("i*h*j + k*h", "0", "0", &h)?;
    solve("h*x + x*h", "i", "1", &h)?;
    solve("3*h*x^2", "0", "0", &AlgebraSpec::complex())?;
    Ok(())
}
