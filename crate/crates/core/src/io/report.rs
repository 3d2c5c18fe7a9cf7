use std::fmt::Write;

use crate::bounds::DimReport;
use crate::error::{Error, Result};

pub fn serialize_reports(reports: &[DimReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports always serialize") + "\n"
}

pub fn parse_reports(text: &str) -> Result<Vec<DimReport>> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

fn opt(v: Option<i64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

pub fn render_table(reports: &[DimReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>8} {:>7} {:>7} {:>7} {:>7} {:>7} {:>9} {:>7}",
        "m", "chi", "lower", "lower*", "upper", "exact", "certified", "oracle"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:>8} {:>7} {:>7} {:>7} {:>7} {:>7} {:>9} {:>7}",
            r.m.to_string(),
            r.chi,
            opt(r.lower_general),
            opt(r.lower_special),
            format!("{}{}", opt(r.upper), if r.upper_clamped { "^" } else { "" }),
            opt(r.exact),
            if r.certified { "yes" } else { "no" },
            opt(r.oracle),
        );
        for l in &r.levels {
            let _ = writeln!(
                out,
                "         level {} n={} faces={} c={} h={} dimM={} chi_i={} h0C={} h0I<={} segments={}",
                l.i,
                l.n,
                l.faces,
                l.c,
                l.h,
                l.dim_m,
                l.chi,
                l.h0_c,
                opt(l.h0_i_upper),
                l.interior_segments
            );
        }
        if !r.assumptions_ok {
            let _ = writeln!(out, "         relative holes at {:?}: bounds withheld", r.holes);
        }
    }
    out
}
