//! Estimator output records and their CSV form.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};

/// CSV columns of a [`ComplexityReport`].
pub const COMPLEXITY_CSV_HEADER: &str =
    "method,l,q,omega,mu,gamma,l_prime,tuple,delta_bar,tau,tau_rel";

/// Every attack the estimator knows how to price.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    BruteForce,
    Plain,
    PlainFq,
    HybridFull,
    HybridPartial,
    HybridDifferent,
    SimpleEstimate,
    PolyNonrecursive,
    Bjorklund,
    Dinur,
    AltPlain,
    AltFull,
    AltPartial,
    DinurAlt,
}

impl Method {
    pub const ALL: [Method; 14] = [
        Method::BruteForce,
        Method::Plain,
        Method::PlainFq,
        Method::HybridFull,
        Method::HybridPartial,
        Method::HybridDifferent,
        Method::SimpleEstimate,
        Method::PolyNonrecursive,
        Method::Bjorklund,
        Method::Dinur,
        Method::AltPlain,
        Method::AltFull,
        Method::AltPartial,
        Method::DinurAlt,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Method::BruteForce => "brute",
            Method::Plain => "plain",
            Method::PlainFq => "plain-fq",
            Method::HybridFull => "full",
            Method::HybridPartial => "partial",
            Method::HybridDifferent => "different",
            Method::SimpleEstimate => "simple",
            Method::PolyNonrecursive => "poly",
            Method::Bjorklund => "bjorklund",
            Method::Dinur => "dinur",
            Method::AltPlain => "alt-plain",
            Method::AltFull => "alt-full",
            Method::AltPartial => "alt-partial",
            Method::DinurAlt => "dinur-alt",
        }
    }

    /// Whether the method lives on the alternative (log-encoded) modeling,
    /// which needs `l` to be a power of two.
    pub fn needs_power_of_two(self) -> bool {
        matches!(
            self,
            Method::AltPlain | Method::AltFull | Method::AltPartial | Method::DinurAlt
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        let alias = match s {
            "brute-force" | "bf" => Some(Method::BruteForce),
            "plain-gb" => Some(Method::Plain),
            "hybrid-full" => Some(Method::HybridFull),
            "hybrid-partial" => Some(Method::HybridPartial),
            "hybrid-different" => Some(Method::HybridDifferent),
            "poly-nonrecursive" | "polymethod" => Some(Method::PolyNonrecursive),
            _ => None,
        };
        alias
            .or_else(|| Method::ALL.into_iter().find(|m| m.id() == s))
            .ok_or_else(|| Error::Parameter(format!("unknown estimator method '{s}'")))
    }
}

/// One priced attack: cost is `2^(tau n)` up to polynomial factors.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexityReport {
    pub method: Method,
    pub l: usize,
    pub q: u64,
    pub omega: f64,
    /// Equation-to-variable ratio the estimate was made for.
    pub mu: f64,
    /// Fraction of guessed windows (full-window hybrids) or the polynomial
    /// method's `γ`.
    pub gamma: Option<f64>,
    pub l_prime: Option<usize>,
    /// Window-type proportions `γ_1..γ_l` of the different-windows hybrid.
    pub tuple: Option<Vec<BigRational>>,
    pub split: Option<usize>,
    /// Relative degree of regularity, when the method has one.
    pub delta_bar: Option<f64>,
    pub tau: f64,
    /// Set when the optimizer did not search its whole domain.
    pub heuristic: bool,
    pub note: Option<String>,
}

impl ComplexityReport {
    pub fn new(method: Method, l: usize, q: u64, omega: f64, mu: f64, tau: f64) -> Self {
        ComplexityReport {
            method,
            l,
            q,
            omega,
            mu,
            gamma: None,
            l_prime: None,
            tuple: None,
            split: None,
            delta_bar: None,
            tau,
            heuristic: false,
            note: None,
        }
    }

    /// `tau` relative to exhaustive search over the same field.
    pub fn tau_rel(&self) -> f64 {
        self.tau / super::brute_force_tau(self.l, self.q)
    }

    /// Whether the attack is asymptotically faster than exhaustive search.
    pub fn beats_brute_force(&self) -> bool {
        self.tau_rel() < 1.0
    }

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
        let tuple = self
            .tuple
            .as_ref()
            .map(|t| {
                t.iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .unwrap_or_default();
        format!(
            "{},{},{},{},{:.6},{},{},{},{},{:.6},{:.6}",
            self.method,
            self.l,
            self.q,
            self.omega,
            self.mu,
            opt(self.gamma),
            self.l_prime.map(|v| v.to_string()).unwrap_or_default(),
            tuple,
            self.delta_bar
                .map(|x| format!("{x:.8}"))
                .unwrap_or_default(),
            self.tau,
            self.tau_rel()
        )
    }
}

/// A row that could not be computed, rendered with empty numeric cells.
pub fn empty_csv_row(method: Method, l: usize, q: u64, omega: f64) -> String {
    format!("{method},{l},{q},{omega},,,,,,,")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_ids_roundtrip() {
        for m in Method::ALL {
            assert_eq!(m.id().parse::<Method>().unwrap(), m);
        }
        assert_eq!("hybrid-full".parse::<Method>().unwrap(), Method::HybridFull);
        assert!("nope".parse::<Method>().is_err());
    }

    #[test]
    fn csv_shape() {
        let mut r = ComplexityReport::new(Method::HybridDifferent, 3, 2, 2.0, 0.5, 0.4);
        r.tuple = Some(vec![
            BigRational::new(1.into(), 8.into()),
            BigRational::new(7.into(), 8.into()),
            BigRational::from_integer(0.into()),
        ]);
        let row = r.csv_row();
        assert_eq!(
            row.split(',').count(),
            COMPLEXITY_CSV_HEADER.split(',').count()
        );
        assert!(row.contains(",1/8;7/8;0,"));
        assert_eq!(
            empty_csv_row(Method::AltPlain, 3, 2, 2.0)
                .split(',')
                .count(),
            11
        );
    }
}
