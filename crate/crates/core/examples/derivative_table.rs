//! Closed-form derivatives checked against central differences.

use ncq::gateaux::{check_closed_form, closed_form_table, ClosedFormParams};
use ncq::numeric::StepSchedule;
use ncq::{sample, AlgebraSpec};

fn main() -> ncq::Result<()> {
    let h = AlgebraSpec::quaternion();
    let mut rng = sample::rng(11);
    for entry in closed_form_table() {
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let x = sample::element_in_shell(&mut rng, 4, 0.5, 2.0);
            let dir = sample::element_in_shell(&mut rng, 4, 0.5, 2.0);
            let params = ClosedFormParams {
                a: sample::element_in_shell(&mut rng, 4, 0.5, 2.0),
                b: sample::element_in_shell(&mut rng, 4, 0.5, 2.0),
                c: sample::element_in_shell(&mut rng, 4, 0.5, 2.0),
            };
            let err = check_closed_form(&entry, &h, &x, &dir, &params, StepSchedule::default())?;
            worst = worst.max(err);
        }
        let map = format!("d({})", entry.map_text);
        println!(
            "{:<20} {:<14} = {:<32} worst relative error {:.2e}",
            entry.name, map, entry.derivative_text, worst
        );
    }
    Ok(())
}
