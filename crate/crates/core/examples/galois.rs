//! Triviality of the connections de = -pi e and de = -(pi/x) e modulo powers of pi.

use neron::dgal::{galois_diagnostic, render, Connection, LineBase};

fn main() -> neron::Result<()> {
    let exp = Connection::parse(LineBase::Affine, &[vec!["pi"]])?;
    let log = Connection::parse(LineBase::Punctured, &[vec!["pi*x^-1"]])?;
    for c in [exp, log] {
        let d = galois_diagnostic(&c, 5, None)?;
        for l in &d.levels {
            match &l.gauge {
                Some(g) => println!("level {}: g = {}", l.n, render(g)),
                None => println!("level {}: {}", l.n, l.obstruction.as_deref().unwrap_or("not trivial")),
            }
        }
        println!("{}\n", d.message());
    }
    Ok(())
}
