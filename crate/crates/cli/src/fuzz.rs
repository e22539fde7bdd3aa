//! Randomised self-checks: coordinate round trips and agreement between the
//! intersection formula and the linking oracle.

use lamkit_core::{
    dynnikov_from_triangle, family_triangle, intersect_relaxed, linking_intersection,
    random_family, triangle_from_dynnikov, validate_triangle, DynnikovCoords, FamilyMember,
    IntervalFamily, PunctureCount, RelaxedCurve,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const ENTRY_BOUND: i64 = 1_000_000;
pub const MAX_COMPONENTS: usize = 8;

#[derive(Debug, Clone, Copy)]
pub struct Config {
    pub trials: u64,
    pub n_max: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Witness {
    RoundTrip {
        trial: u64,
        dynnikov: Vec<i64>,
        reason: String,
    },
    OracleEquivalence {
        trial: u64,
        family: IntervalFamily,
        curve: RelaxedCurve,
        formula: String,
        oracle: String,
    },
}

/// Runs every trial and returns the failure with the smallest trial index.
pub fn campaign(cfg: Config) -> Option<Witness> {
    (0..cfg.trials)
        .into_par_iter()
        .find_map_first(|k| run_trial(cfg, k))
}

/// One trial, reproducible from `(seed, k)` alone.
pub fn run_trial(cfg: Config, k: u64) -> Option<Witness> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(k);
    let n = rng.gen_range(3..=cfg.n_max.max(3));

    let v = loop {
        let v: Vec<i64> = (0..2 * (n - 2))
            .map(|_| rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND))
            .collect();
        if v.iter().any(|&x| x != 0) {
            break v;
        }
    };
    if round_trip_failure(&v).is_some() {
        let v = shrink_vector(v, |w| round_trip_failure(w).is_some());
        let reason = round_trip_failure(&v).unwrap_or_default();
        return Some(Witness::RoundTrip { trial: k, dynnikov: v, reason });
    }

    let pc = PunctureCount::new(n).ok()?;
    let family = random_family(pc, MAX_COMPONENTS, rng.gen()).ok()?;
    if first_mismatch(&family).is_some() {
        let family = shrink_family(family, |f| first_mismatch(f).is_some());
        let (curve, formula, oracle) = first_mismatch(&family)?;
        return Some(Witness::OracleEquivalence { trial: k, family, curve, formula, oracle });
    }
    None
}

/// Why `v` fails the round trip, if it does.
pub fn round_trip_failure(v: &[i64]) -> Option<String> {
    let d = match DynnikovCoords::from_flat(v) {
        Ok(d) => d,
        Err(_) => return None,
    };
    let t = match triangle_from_dynnikov(&d) {
        Ok(t) => t,
        Err(e) => return Some(format!("inversion failed: {e}")),
    };
    if let Err(v) = validate_triangle(&t) {
        return Some(format!("inverted triangle is invalid: {v}"));
    }
    match dynnikov_from_triangle(&t) {
        Ok(back) if back == d => None,
        Ok(back) => Some(format!("round trip gave {:?}", back.to_flat())),
        Err(e) => Some(format!("conversion failed: {e}")),
    }
}

/// First relaxed curve on which formula and oracle disagree, with both
/// results rendered as text (errors included).
pub fn first_mismatch(f: &IntervalFamily) -> Option<(RelaxedCurve, String, String)> {
    if f.is_empty() {
        return None;
    }
    let t = match family_triangle(f) {
        Ok(t) => t,
        Err(e) => {
            let c = f.curves().next()?.0;
            return Some((c, format!("error: {e}"), "n/a".into()));
        }
    };
    RelaxedCurve::all(f.n()).find_map(|c| {
        let got = intersect_relaxed(&t, &c);
        let want = linking_intersection(f, &c);
        match (&got, &want) {
            (Ok(a), Ok(b)) if a == b => None,
            _ => Some((c, show(got), show(want))),
        }
    })
}

fn show(r: lamkit_core::Result<i64>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Halves coordinates towards zero while `fails` keeps holding. The zero
/// vector is never proposed.
pub fn shrink_vector(mut v: Vec<i64>, fails: impl Fn(&[i64]) -> bool) -> Vec<i64> {
    loop {
        let mut progressed = false;
        for idx in 0..v.len() {
            while v[idx] != 0 {
                let mut w = v.clone();
                w[idx] /= 2;
                if w.iter().all(|&x| x == 0) || !fails(&w) {
                    break;
                }
                v = w;
                progressed = true;
            }
        }
        let halved: Vec<i64> = v.iter().map(|x| x / 2).collect();
        if halved != v && halved.iter().any(|&x| x != 0) && fails(&halved) {
            v = halved;
            progressed = true;
        }
        if !progressed {
            return v;
        }
    }
}

/// Drops components and halves multiplicities while `fails` keeps holding.
pub fn shrink_family(mut f: IntervalFamily, fails: impl Fn(&IntervalFamily) -> bool) -> IntervalFamily {
    loop {
        let candidates = (0..f.members().len()).flat_map(|idx| {
            let members = f.members().to_vec();
            let mut dropped = members.clone();
            dropped.remove(idx);
            let mut halved = members;
            halved[idx].mult /= 2;
            if halved[idx].mult == 0 {
                halved.remove(idx);
            }
            [dropped, halved]
        });
        let next = candidates
            .filter(|m: &Vec<FamilyMember>| !m.is_empty())
            .filter_map(|m| IntervalFamily::new(f.n(), m).ok())
            .find(|g| g != &f && fails(g));
        match next {
            Some(g) => f = g,
            None => return f,
        }
    }
}
