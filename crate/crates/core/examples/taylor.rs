//! Taylor polynomials and the decay of the remainder.

use ncq::parse::{parse_element, parse_poly};
use ncq::taylor::{remainder_probe, taylor_expand, PROBE_STEPS};
use ncq::AlgebraSpec;

fn main() -> ncq::Result<()> {
    let h = AlgebraSpec::quaternion();
    let f = parse_poly("x^3 + i*x*j", &h)?;
    let x0 = parse_element("1 + k", &h)?;
    let t = taylor_expand(&f, &x0, &h)?;
    println!("f(x) = {}", f.to_text(&h));
    for (n, term) in t.terms.iter().enumerate() {
        println!("  order {n}: {}", term.to_text(&h));
    }
    println!("reassembled: {}", t.assemble(&h).to_text(&h));

    let dir = parse_element("i - 2j", &h)?;
    for order in 0..3 {
        let probe = remainder_probe(&f, &t.truncated(order), &dir, &PROBE_STEPS, &h)?;
        let ratios: Vec<String> = probe.samples.iter().map(|(s, r)| format!("t={s:e}: {r:.3e}")).collect();
        println!("truncated at {order}, |R|/t^{order}: {}", ratios.join(", "));
    }
    Ok(())
}
