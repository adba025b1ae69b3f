//! Discrete and geometric inequality suite: exhaustive sumset-entropy
//! verification over a probability grid, cardinality bounds, and
//! Brunn–Minkowski reports on box and disc lattice sets, including
//! restricted sums.

use super::{SuiteOutput, Tolerances};
use crate::harness::config::ExperimentConfig;
use crate::harness::report::{fmt_g17, Check, RawTable, Unit};
use crate::harness::HarnessError;
use crate::infotheory::geometry::GridSet;
use crate::infotheory::{
    bmi_check, discrete_entropy, enumerate_grid_pmfs, minkowski_sum, restricted_sum,
    sumset_entropy_check, Pmf,
};
use crate::sampling::substream_seed;

pub fn run(cfg: &ExperimentConfig, tol: &Tolerances) -> Result<SuiteOutput, HarnessError> {
    let slack = tol["rounding_slack"];
    let mut raw = RawTable::new(&["check", "lhs", "rhs"]);
    let mut checks = Vec::new();

    // Exhaustive sweep: every pmf pair with support ⊂ {0..4} on a
    // 0.1-probability grid.
    {
        let pmfs = enumerate_grid_pmfs(&[0, 1, 2, 3, 4], 10);
        let mut entropy_violations = 0usize;
        let mut cardinality_violations = 0usize;
        let mut worst_margin = f64::NEG_INFINITY;
        for x in &pmfs {
            for y in &pmfs {
                let r = sumset_entropy_check(x, y)?;
                let margin = r.h_sum - r.h_x - r.h_y;
                if margin > worst_margin {
                    worst_margin = margin;
                }
                if margin > slack {
                    entropy_violations += 1;
                }
                if !r.cardinality_subadditive {
                    cardinality_violations += 1;
                }
            }
        }
        raw.push(vec![
            "exhaustive_pairs".into(),
            (pmfs.len() * pmfs.len()).to_string(),
            fmt_g17(worst_margin),
        ]);
        checks.push(Check::upper_bound(
            "entropy_subadditivity_violations",
            entropy_violations as f64,
            0.0,
            0.0,
            None,
            Unit::Dimensionless,
        ));
        checks.push(Check::upper_bound(
            "cardinality_subadditivity_violations",
            cardinality_violations as f64,
            0.0,
            0.0,
            None,
            Unit::Dimensionless,
        ));
    }

    // Hand-checkable pmf examples.
    {
        let coin = Pmf::scalar(&[0, 1], &[0.5, 0.5])?;
        let r = sumset_entropy_check(&coin, &coin)?;
        raw.push(vec![
            "coin_plus_coin_entropy_bits".into(),
            fmt_g17(r.h_sum),
            fmt_g17(r.h_x + r.h_y),
        ]);
        checks.push(Check::close_to(
            "coin_sum_entropy_bits",
            r.h_sum,
            1.5,
            1e-12,
            None,
            Unit::Dimensionless,
        ));

        let spread_x = Pmf::scalar(&[0, 1, 2], &[1.0 / 3.0; 3])?;
        let spread_y = Pmf::scalar(&[0, 10], &[0.5, 0.5])?;
        let r = sumset_entropy_check(&spread_x, &spread_y)?;
        raw.push(vec![
            "spread_support_cardinality".into(),
            r.card_sum.to_string(),
            (r.card_x * r.card_y).to_string(),
        ]);
        checks.push(Check::close_to(
            "spread_support_cardinality",
            r.card_sum as f64,
            6.0,
            0.0,
            None,
            Unit::Dimensionless,
        ));
        // A maximally spread support keeps H(X+Y) = H(X) + H(Y).
        checks.push(Check::close_to(
            "spread_support_entropy_equality_bits",
            r.h_sum,
            r.h_x + r.h_y,
            1e-12,
            None,
            Unit::Dimensionless,
        ));

        // Singleton supports: zero entropy on both sides, equality.
        let s = sumset_entropy_check(
            &Pmf::scalar(&[9], &[1.0])?,
            &Pmf::scalar(&[-2], &[1.0])?,
        )?;
        checks.push(Check::close_to(
            "singleton_entropy_equality_bits",
            s.h_sum,
            discrete_entropy(&Pmf::scalar(&[9], &[1.0])?),
            0.0,
            None,
            Unit::Dimensionless,
        ));
    }

    // Brunn–Minkowski on homothetic boxes: corrected margin sits at zero.
    {
        let a = GridSet::boxed(1.0, &[(0, 9), (0, 9)])?;
        let r = bmi_check(&a, &a)?;
        raw.push(vec![
            "bmi_box_roots".into(),
            fmt_g17(r.sum_volume_root),
            fmt_g17(r.parts_volume_root_sum),
        ]);
        checks.push(Check::boolean("bmi_box_holds", r.holds_with_cell_correction));
        checks.push(Check::close_to(
            "bmi_box_corrected_margin",
            r.corrected_margin,
            0.0,
            1e-9,
            None,
            Unit::Dimensionless,
        ));
    }

    // Brunn–Minkowski on a disc/box pair.
    {
        let a = GridSet::disc(1.0, 6)?;
        let b = GridSet::boxed(1.0, &[(0, 4), (0, 4)])?;
        let r = bmi_check(&a, &b)?;
        raw.push(vec![
            "bmi_disc_box_roots".into(),
            fmt_g17(r.sum_volume_root),
            fmt_g17(r.parts_volume_root_sum),
        ]);
        checks.push(Check::boolean(
            "bmi_disc_box_holds",
            r.holds_with_cell_correction,
        ));
    }

    // Restricted sums: the full product recovers the Minkowski sum, a
    // thinned product can only shrink it.
    {
        let a = GridSet::boxed(1.0, &[(0, 7), (0, 7)])?;
        let b = GridSet::disc(1.0, 3)?;
        let full_pairs: Vec<(Vec<i64>, Vec<i64>)> = a
            .points()
            .flat_map(|p| b.points().map(move |q| (p.clone(), q.clone())))
            .collect();
        let full = minkowski_sum(&a, &b)?;
        let via_omega = restricted_sum(&a, &b, &full_pairs)?;
        checks.push(Check::boolean(
            "restricted_full_omega_equals_minkowski",
            via_omega == full,
        ));

        // Drop ~10% of pairs deterministically.
        let seed = substream_seed(cfg.master_seed, 0xB141);
        let thinned: Vec<(Vec<i64>, Vec<i64>)> = full_pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| substream_seed(seed, *i as u64) % 10 != 0)
            .map(|(_, p)| p.clone())
            .collect();
        let restricted = restricted_sum(&a, &b, &thinned)?;
        raw.push(vec![
            "restricted_thinned_cardinality".into(),
            restricted.len().to_string(),
            full.len().to_string(),
        ]);
        checks.push(Check::boolean(
            "restricted_sum_contained_in_full",
            restricted.len() <= full.len()
                && restricted.points().all(|p| full.contains(p)),
        ));
    }

    Ok((checks, raw))
}
