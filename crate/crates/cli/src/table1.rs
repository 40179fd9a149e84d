//! Small-scale solving-degree experiment on the two modelings.
//!
//! Each row `(s, w)` plants an instance with `l = 2^s` and the default number
//! of equations, moving to the next seed until the planted vector is the only
//! regular solution. A second solution makes XL saturate later than on a
//! typical instance, which would distort the degree being measured. The row
//! then records the degree XL reaches on the quadratic modeling and,
//! optionally, on the binary re-encoding.

use std::fmt::Write as _;

use rmq_core::altmodel::alt_xl_solve;
use rmq_core::instance::{brute_force_solve, default_m, plant_instance, RmqInstance};
use rmq_core::modeling::{build_modeling, xl_solve, SolveReport, XlOptions};
use rmq_core::{Error, Result};

/// Rows small enough to run on a desk in well under five minutes each.
pub const ALLOWLIST: [(usize, usize); 7] = [(2, 5), (2, 6), (2, 7), (3, 4), (4, 2), (4, 3), (5, 2)];

/// How many consecutive seeds to try before giving up on a unique instance.
const SEED_ATTEMPTS: u64 = 1000;

pub const TABLE1_CSV_HEADER: &str = "s,w,l,m,seed,quad_status,quad_d_solv,quad_max_rows,quad_max_cols,quad_elapsed_s,alt_status,alt_d_solv,alt_max_rows,alt_max_cols,alt_elapsed_s";

#[derive(Clone, Debug)]
pub struct Table1Row {
    pub s: usize,
    pub w: usize,
    /// The instance that was actually solved.
    pub instance: RmqInstance,
    pub quadratic: SolveReport,
    pub alternative: Option<SolveReport>,
}

impl Table1Row {
    pub fn csv_row(&self) -> String {
        let mut line = format!(
            "{},{},{},{},{}",
            self.s,
            self.w,
            self.instance.l,
            self.instance.m(),
            self.instance.seed
        );
        for rep in [Some(&self.quadratic), self.alternative.as_ref()] {
            match rep {
                Some(r) => {
                    let _ = write!(
                        line,
                        ",{},{},{},{},{:.3}",
                        r.status.as_str(),
                        r.solving_degree,
                        r.max_rows,
                        r.max_cols,
                        r.elapsed
                    );
                }
                None => line.push_str(",,,,,"),
            }
        }
        line
    }
}

/// Plants the first instance at or after `seed` whose only regular solution
/// is the planted one.
pub fn unique_instance(l: usize, w: usize, m: usize, seed: u64) -> Result<RmqInstance> {
    for k in 0..SEED_ATTEMPTS {
        let inst = plant_instance(l, w, m, seed.wrapping_add(k))?;
        if brute_force_solve(&inst)?.len() == 1 {
            return Ok(inst);
        }
    }
    Err(Error::Parameter(format!(
        "no instance with a unique solution among {SEED_ATTEMPTS} seeds from {seed} (l={l}, w={w}, m={m})"
    )))
}

/// Runs one row. `with_alt` also solves the binary re-encoding.
pub fn run_row(s: usize, w: usize, seed: u64, with_alt: bool, xl: &XlOptions) -> Result<Table1Row> {
    if s == 0 || s >= usize::BITS as usize {
        return Err(Error::Parameter(format!("s={s} must be at least 1")));
    }
    let l = 1usize << s;
    let instance = unique_instance(l, w, default_m(l, w), seed)?;
    let modeling = build_modeling(&instance, None, true)?;
    let quadratic = xl_solve(&instance, &modeling, xl)?;
    let alternative = if with_alt {
        Some(alt_xl_solve(&instance, xl)?)
    } else {
        None
    };
    Ok(Table1Row {
        s,
        w,
        instance,
        quadratic,
        alternative,
    })
}

pub fn render_csv(rows: &[Table1Row]) -> String {
    let mut out = format!("{}\n{TABLE1_CSV_HEADER}\n", rmq_core::CSV_VERSION_LINE);
    for r in rows {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}
