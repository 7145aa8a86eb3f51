//! Reads a presentation file, checks its group and prints it back in canonical form.

use neron::cli::PresentationFile;
use neron::groebner::Limits;

const TEXT: &str = "
group T {
  vars: u, v, x;
  relations: u*v - 1;
  comul: u -> u'*u'', v -> v'*v'', x -> x' + x'';
  counit: u -> 1, v -> 1, x -> 0;
  antipode: u -> v, v -> u, x -> -x;
}

rep V {
  group: T;
  matrix: [[u, 0], [0, 1]];
}
";

fn main() -> neron::Result<()> {
    let lim = Limits::default();
    let file = PresentationFile::parse(TEXT, &lim)?;
    let t = file.group("T")?;
    print!("{}", t.check_hopf(&lim)?);
    println!("rep valid: {}", file.rep("V")?.validate(&lim)?.passed());
    print!("{file}");
    Ok(())
}
