//! `c_d` as the root of `t^{2(d-1)} - (d-1)t² - 1` with its elementary bracket.

use geonum::harness::{emit_report, CdTable, ReportFormat};
use geonum::transference::t2_root;

fn main() -> geonum::error::Result<()> {
    print!("{}", emit_report(&CdTable::new(3, 12)?, ReportFormat::Text)?);
    for t1 in [1.0, 1.1, 1.2] {
        println!("second root at t1 = {t1}: {:.12}", t2_root(t1, 5)?);
    }
    Ok(())
}
