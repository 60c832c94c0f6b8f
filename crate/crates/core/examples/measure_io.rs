//! Writes a law to the member/atom/weight CSV format, reads it back, and
//! shows a gridded projection as JSON.

use hipm_lab::io::{gridded_law_to_json, read_law_csv, write_law_csv};
use hipm_lab::{DiscreteMeasure, EmpiricalLaw, Grid, GriddedLaw};

fn main() -> hipm_lab::Result<()> {
    let law = EmpiricalLaw::with_hull_domain(vec![
        DiscreteMeasure::new(vec![0.0, 0.5], vec![0.25, 0.75])?,
        DiscreteMeasure::dirac(1.0)?,
    ])?;
    let mut buf = Vec::new();
    write_law_csv(&law, &mut buf)?;
    let text = String::from_utf8(buf).expect("utf-8");
    print!("{text}");

    let back = read_law_csv(text.as_bytes())?;
    assert_eq!(back, law);

    let grid = Grid::on(law.domain(), 5)?;
    println!("{}", gridded_law_to_json(&GriddedLaw::from_law(&law, &grid)?)?);
    Ok(())
}
