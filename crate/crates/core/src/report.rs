//! Check records, suite reports and the registry of verified claims.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;

/// A statement the verification suites check, keyed by a stable name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub key: &'static str,
    pub statement: &'static str,
}

pub const CLAIMS: &[Claim] = &[
    Claim {
        key: "azumaya-action-map",
        statement: "A finite free R-algebra is Azumaya iff A ⊗_R A^op → End_R(A) is an isomorphism.",
    },
    Claim {
        key: "shift-operator",
        statement: "Orthogonal idempotents split modules; the shift Σ^n moves component λ by n(λ) and Σ^m Σ^n = Σ^(m+n).",
    },
    Claim {
        key: "tilting-shift-decomposition",
        statement: "Each tilting complex is Σ^n M for a unique section n and invertible bimodule M.",
    },
    Claim {
        key: "bimodule-automorphism",
        statement: "An invertible bimodule determines an automorphism of the base, compatibly with composition.",
    },
    Claim {
        key: "brauer-aut-action",
        statement: "Aut(X) acts on Br(X) by pushforward, φ·[A] = [φ_*A].",
    },
    Claim {
        key: "dpic-semidirect-product",
        statement: "DPic(A) ≅ (Γ(X,Z) × Pic(X)) ⋊_α Aut(X)_[A] for a Pic(X)-valued 2-cocycle α.",
    },
    Claim {
        key: "dpic-local-csa",
        statement: "Over a local base, DPic(A) ≅ Z × Out(A); for A = (−1,−√2) over Q(√2) this is Z, while DPic(K) = Z × Z/2.",
    },
    Claim {
        key: "weyl-presentation",
        statement: "A_n(k) has generators x_1..x_2n with [x_i,x_j] = δ_{i,j+n} − δ_{i+n,j}, and its center is k[x_1^p,…,x_2n^p].",
    },
    Claim {
        key: "omega-definition",
        statement: "ω(c) scales the last n generators of Z_n(k) by c^(−1).",
    },
    Claim {
        key: "pushforward-nontrivial",
        statement: "A_n(k) is a domain, so [φ_*A_n(k)] ≠ [Z_n(k)] for every automorphism φ.",
    },
    Claim {
        key: "tensor-square-relations",
        statement: "In A_n ⊗_Z A_n the elements ζ_i, α_i satisfy relations (a)–(e).",
    },
    Claim {
        key: "tensor-square-iso",
        statement: "(ω(c)_*A_n) ⊗_Z (ω(c')_*A_n) ≅ (ω(c+c')_*A_n) ⊗_Z M_(p^n)(Z), with ⟨α⟩ ≅ M_p(k) per pair.",
    },
    Claim {
        key: "omega-group-law",
        statement: "[ω(c)_*A_n] · [ω(c')_*A_n] = [ω(c+c')_*A_n], and [A_n(k)] has order p.",
    },
    Claim {
        key: "brauer-inverse-opposite",
        statement: "The inverse of a Brauer class is the class of the opposite algebra; ω(−1)_*A_n ≅ A_n^op.",
    },
    Claim {
        key: "omega-embedding",
        statement: "c ↦ [ω(c)_*A_n] embeds (k,+) in Br, and c ↦ ω(c)·Aut_[A_n] embeds k^× in the coset space.",
    },
    Claim {
        key: "dpic-not-surjective",
        statement: "The embedding DPic(A_n(k)) → DPic(Z_n(k)) is not surjective: no (m, ω(c)) with c ≠ 1 is in the image.",
    },
];

pub fn claim(key: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.key == key)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub claim: String,
    pub citation: String,
    pub status: Status,
    pub witness: Value,
    pub ms: u64,
}

/// Runs `f`, timing it. `Ok((passed, witness))` becomes pass/fail;
/// infeasible sizes and exhausted budgets become skips with the reason as
/// witness; any other error is a failure.
pub fn run_check(
    claim: impl Into<String>,
    citation: &'static str,
    f: impl FnOnce() -> crate::Result<(bool, Value)>,
) -> CheckRecord {
    debug_assert!(self::claim(citation).is_some(), "unknown claim key {citation}");
    let t = Instant::now();
    let (status, witness) = match f() {
        Ok((true, w)) => (Status::Pass, w),
        Ok((false, w)) => (Status::Fail, w),
        Err(e @ (Error::Infeasible(_) | Error::BudgetExceeded(_))) => (Status::Skip, json!({"reason": e.to_string()})),
        Err(e) => (Status::Fail, json!({"error": e.to_string()})),
    };
    CheckRecord {
        claim: claim.into(),
        citation: citation.to_string(),
        status,
        witness,
        ms: t.elapsed().as_millis() as u64,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: Value,
    pub checks: Vec<CheckRecord>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(suite: impl Into<String>, params: Value, checks: Vec<CheckRecord>) -> Self {
        let verdict = if checks.iter().all(|c| c.status != Status::Fail) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Report {
            suite: suite.into(),
            params,
            checks,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The JSON with every `ms` zeroed; equal inputs and seed give equal
    /// bytes.
    pub fn to_json_untimed(&self) -> String {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.ms = 0;
        }
        r.to_json()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} {}", self.suite, self.params);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            let _ = writeln!(out, "  {status} [{}] {} ({} ms)", c.citation, c.claim, c.ms);
            if c.status != Status::Pass {
                let _ = writeln!(out, "       {}", c.witness);
            }
        }
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.passed() { "pass" } else { "fail" }
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_ignores_skips() {
        let ok = run_check("a", "weyl-presentation", || Ok((true, json!(1))));
        let skip = run_check("b", "weyl-presentation", || Err(Error::Infeasible("big".into())));
        assert_eq!(skip.status, Status::Skip);
        assert!(Report::new("s", json!({}), vec![ok.clone(), skip]).passed());
        let bad = run_check("c", "weyl-presentation", || Err(Error::ZeroInput));
        assert_eq!(bad.status, Status::Fail);
        assert!(!Report::new("s", json!({}), vec![ok, bad]).passed());
    }

    #[test]
    fn registry_keys_unique() {
        let mut keys: Vec<_> = CLAIMS.iter().map(|c| c.key).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), CLAIMS.len());
    }
}
