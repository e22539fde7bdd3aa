//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lamkit_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, &'static str, Option<Duration>, fn(&mut Vec<String>));

struct Outcome {
    failures: Vec<String>,
    limit: Option<Duration>,
    elapsed: Duration,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.failures.is_empty() && self.limit.is_none_or(|l| self.elapsed < l)
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok && failures.len() < 5 {
        failures.push(what());
    } else if !ok {
        failures.push(String::new());
    }
}

fn pc(n: usize) -> PunctureCount {
    PunctureCount::new(n).unwrap()
}

fn tri(n: usize, alpha: &[i64], beta: &[i64]) -> TriangleCoords {
    TriangleCoords::new(pc(n), alpha.to_vec(), beta.to_vec()).unwrap()
}

fn random_dynnikov(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> DynnikovCoords {
    loop {
        let v: Vec<i64> = (0..2 * (n - 2)).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(d) = DynnikovCoords::from_flat(&v) {
            return d;
        }
    }
}

fn ac1(f: &mut Vec<String>) {
    let t = tri(5, &[2, 6, 3, 5, 4, 4], &[4, 8, 8, 4]);
    let d = dynnikov_from_triangle(&t).unwrap();
    check(f, d.to_flat() == [2, 1, 0, -2, 0, 2], || format!("rho = {:?}", d.to_flat()));
    let back = triangle_from_dynnikov(&d).unwrap();
    check(f, back == t, || format!("inverse = {back:?}"));
}

fn ac2(f: &mut Vec<String>) {
    let t = tri(5, &[2, 6, 3, 5, 4, 4], &[4, 8, 8, 4]);
    let s = s_counts(&t, 1, 3).unwrap();
    check(f, (s.above, s.below, s.total) == (0, 2, 2), || format!("s = {s:?}"));
    let c = RelaxedCurve::new(pc(5), 2, 4).unwrap();
    let v = intersect_relaxed(&t, &c).unwrap();
    check(f, v == 4, || format!("i(L, C_24) = {v}"));
    let formula = t.beta_at(1) + t.beta_at(4) - 2 * s.total;
    check(f, formula == 4, || format!("beta_1 + beta_4 - 2s = {formula}"));
}

fn ac3(f: &mut Vec<String>) {
    let t1 = tri(3, &[3, 1], &[4, 2]);
    let t2 = tri(3, &[4, 2], &[2, 6]);
    let s1 = t1.to_dynnikov().unwrap().b()[0].signum();
    let s2 = t2.to_dynnikov().unwrap().b()[0].signum();
    check(f, s1 * s2 == -1, || format!("loop signs {s1}, {s2}"));
    let v = intersect_d3(&t1, &t2).unwrap();
    check(f, v == 10, || format!("i(L1, L2) = {v}"));
}

fn ac4(f: &mut Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100_000 {
        let n = rng.gen_range(3..=12);
        let d = random_dynnikov(&mut rng, n, 1_000_000);
        let t = triangle_from_dynnikov(&d).unwrap();
        let valid = validate_triangle(&t);
        check(f, valid.is_ok(), || format!("{d:?} -> invalid {valid:?}"));
        let back = dynnikov_from_triangle(&t).unwrap();
        check(f, back == d, || format!("{d:?} -> {back:?}"));
    }
}

fn ac5(f: &mut Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        let n = pc(rng.gen_range(3..=10));
        let fam = random_family(n, rng.gen_range(1..=8), rng.gen()).unwrap();
        let t = family_triangle(&fam).unwrap();
        for c in RelaxedCurve::all(n) {
            let got = intersect_relaxed(&t, &c).unwrap();
            let want = linking_intersection(&fam, &c).unwrap();
            check(f, got == want, || {
                format!("{} vs C_{}{}: {got} != {want}", serde_json::to_string(&fam).unwrap(), c.i(), c.j())
            });
        }
    }
}

fn ac6(f: &mut Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1_000 {
        let n = rng.gen_range(3..=10);
        let d = random_dynnikov(&mut rng, n, 20);
        let t = triangle_from_dynnikov(&d).unwrap();
        let diagram = reconstruct(&t).unwrap();
        for i in 1..=t.n().strips() {
            for j in i..=t.n().strips() {
                let got = diagram.open_paths_in(i, j) as i64;
                let want = (t.beta_at(i) + t.beta_at(j + 1)) / 2;
                check(f, got == want, || format!("{d:?} S_{i},{j}: {got} != {want}"));
            }
        }
    }
}

fn ac7(f: &mut Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let c12 = RelaxedCurve::new(pc(3), 1, 2).unwrap();
    let c23 = RelaxedCurve::new(pc(3), 2, 3).unwrap();
    for k in 0..10_000 {
        // keep a share of the samples on the b_1 = 0 boundary
        let d = if k % 4 == 0 {
            let a = rng.gen_range(1..=1_000);
            DynnikovCoords::from_flat(&[a * if rng.gen() { 1 } else { -1 }, 0]).unwrap()
        } else {
            random_dynnikov(&mut rng, 3, 1_000_000)
        };
        let t = triangle_from_dynnikov(&d).unwrap();
        let r12 = intersect_relaxed(&t, &c12).unwrap();
        let r23 = intersect_relaxed(&t, &c23).unwrap();
        check(f, r12 == t.beta_at(2), || format!("{d:?}: C_12 gives {r12}"));
        check(f, r23 == t.beta_at(1), || format!("{d:?}: C_23 gives {r23}"));
        for c in [&c12, &c23] {
            let ct = c.to_triangle();
            let want = intersect_relaxed(&t, c).unwrap();
            for got in [intersect_d3(&t, &ct).unwrap(), intersect_d3(&ct, &t).unwrap()] {
                check(f, got == want, || format!("{d:?} vs C_{}{}: d3 {got} != {want}", c.i(), c.j()));
            }
            if d.b()[0] == 0 {
                let (opp, same) = d3_branches(&t, &ct).unwrap();
                check(f, opp == same, || format!("{d:?}: branches {opp} != {same}"));
            }
        }
    }
}

fn ac8(f: &mut Vec<String>) {
    for n in 3..=12 {
        for c in RelaxedCurve::all(pc(n)) {
            let t = triangle_from_dynnikov(&relaxed_curve_dynnikov(&c)).unwrap();
            let v = intersect_relaxed(&t, &c).unwrap();
            check(f, v == 0, || format!("C_{}{} on D_{n}: {v}", c.i(), c.j()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10_000 {
        let x = random_dynnikov(&mut rng, 3, 1_000_000);
        let y = random_dynnikov(&mut rng, 3, 1_000_000);
        let (t1, t2) = (x.to_triangle().unwrap(), y.to_triangle().unwrap());
        let (u, v) = (intersect_d3(&t1, &t2).unwrap(), intersect_d3(&t2, &t1).unwrap());
        check(f, u == v, || format!("{x:?}, {y:?}: {u} != {v}"));
    }
}

fn run(limit: Option<Duration>, body: fn(&mut Vec<String>)) -> Outcome {
    let mut failures = Vec::new();
    let start = Instant::now();
    body(&mut failures);
    Outcome { failures, limit, elapsed: start.elapsed() }
}

fn main() -> ExitCode {
    let ms = |x| Some(Duration::from_millis(x));
    let secs = |x| Some(Duration::from_secs(x));
    let criteria: [Criterion; 8] = [
        ("AC1", "n = 5 reference conversion and inversion", ms(1), ac1),
        ("AC2", "n = 5 reference intersection with C_24", ms(1), ac2),
        ("AC3", "D_3 example intersection", None, ac3),
        ("AC4", "round trip on 1e5 Dynnikov vectors", secs(60), ac4),
        ("AC5", "linking oracle on 1e4 families", secs(60), ac5),
        ("AC6", "open path counts on 1e3 laminations", None, ac6),
        ("AC7", "D_3 specialisations on 1e4 laminations", None, ac7),
        ("AC8", "self-annihilation and D_3 symmetry", None, ac8),
    ];

    let mut all = true;
    for (id, what, limit, body) in criteria {
        let out = run(limit, body);
        let status = if out.passed() { "PASS" } else { "FAIL" };
        let bound = limit.map(|l| format!(" (limit {l:?})")).unwrap_or_default();
        println!(
            "[{status}] {id} {what}: {} failure(s), {:?}{bound}",
            out.failures.len(),
            out.elapsed
        );
        for msg in out.failures.iter().filter(|m| !m.is_empty()) {
            println!("       {msg}");
        }
        all &= out.passed();
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
