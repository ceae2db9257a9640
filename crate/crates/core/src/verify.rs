//! Whole-instance verification: every identity the crate knows about, run
//! against one parameter array, with a named pass/fail line per check.

use crate::ekr::{degenerate_check, EkrError, EkrSystem};
use crate::lp::{dual_vector, lp_dual_unique, second_eigenmatrix};
use crate::parameter_array::ParameterArray;
use crate::realization::{realize, RealizeError};
use crate::report::CheckReport;

/// Result of a full verification run.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub report: CheckReport,
    pub admissible: bool,
}

impl VerifyOutcome {
    pub fn all_passed(&self) -> bool {
        self.report.all_passed()
    }
}

/// Realizes the array and runs the complete suite: realization invariants,
/// the split/standard identities, the EKR oracle/closed-form agreements and
/// inverse pairs, operator actions, the `Delta` identities, the duality
/// relation, the filtration and projection patterns, and the LP checks.
///
/// In the degenerate regime (`beta = -2`, odd `d`) the EKR checks are
/// replaced by the pairing confirmation and a check that construction is
/// refused.
pub fn verify_array(p: &ParameterArray) -> Result<VerifyOutcome, RealizeError> {
    let r = realize(p)?;
    let mut report = CheckReport::new();
    report.merge(r.invariant_report());
    report.merge(r.identity_report());
    report.merge(degenerate_check(&r));

    let admissible = p.ekr_admissible();
    if !admissible {
        let refused = matches!(EkrSystem::new(&r), Err(EkrError::Inadmissible { .. }));
        report.push_detail(
            "ekr_construction_refused",
            refused,
            "degenerate base: the EKR basis must be refused",
        );
        return Ok(VerifyOutcome { report, admissible });
    }

    match EkrSystem::new(&r) {
        Err(e) => report.push_detail("ekr_construction", false, e.to_string()),
        Ok(sys) => {
            report.push("ekr_construction", true);
            report.merge(sys.consistency_report());
            report.merge(sys.action_report());
            report.merge(sys.delta_report());
            report.merge(sys.star_relation_report());
            report.merge(sys.filtration_report());
            report.merge(sys.g_projection_report());

            let q = second_eigenmatrix(&r);
            let column0_ones = (0..r.dim()).all(|i| q.entry(i, 0).is_one());
            report.push("second_eigenmatrix_column0_ones", column0_ones);

            let mut duals_ok = true;
            let mut unique_ok = true;
            for t in 0..=p.d() {
                match dual_vector(&sys, t) {
                    Ok(dv) => match lp_dual_unique(&q, t) {
                        Ok(unique) => unique_ok &= unique == dv.f,
                        Err(_) => unique_ok = false,
                    },
                    Err(_) => duals_ok = false,
                }
            }
            report.push("lp_dual_vector_all_t", duals_ok);
            report.push("lp_dual_unique_and_matches", unique_ok);
        }
    }
    Ok(VerifyOutcome { report, admissible })
}
