//! Acceptance suite: one PASS/FAIL line per criterion, with timing.
//! Runs without the libtest harness so the lines print in order.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tvar_cli::{load_problem, run, Problem, RunOptions};
use tvar_core::descent::{shift_coefficients, split_cocycle, SignCharacter};
use tvar_core::downgrade::{check_real_compatibility, cosection_shift, downgrade_with, DowngradeOptions};
use tvar_core::graded::{graded_piece, piece_involution};
use tvar_core::lattice::smith_normal_form;
use tvar_core::num::{ints, rat, rats};
use tvar_core::{
    AHDatum, Cone, Int, IntMatrix, InvolutionType, LatticeInvolution, PolyhedralDivisor, Rat,
    TailedPolyhedron, ToricBase,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn problem(name: &str) -> Problem {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name);
    load_problem(&std::fs::read_to_string(path).expect("example file")).expect("example parses")
}

fn datum_of(name: &str) -> Result<AHDatum, String> {
    let r = run(&problem(name), &RunOptions::default()).map_err(|e| e.to_string())?;
    serde_json::from_value(r.result).map_err(|e| e.to_string())
}

fn orthant_polyhedron(vertices: &[[i64; 2]]) -> TailedPolyhedron {
    let v: Vec<Vec<Rat>> = vertices.iter().map(|p| rats(p)).collect();
    TailedPolyhedron::new(&v, &Cone::orthant(2)).unwrap()
}

fn weil_divisor() -> PolyhedralDivisor {
    let rays = vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[-2, -1]), ints(&[-1, -2])];
    let base = ToricBase::from_rays(&rays, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]], 2).unwrap();
    PolyhedralDivisor::new(
        base,
        Cone::orthant(2),
        vec![
            (ints(&[-2, -1]), orthant_polyhedron(&[[0, 1], [2, 0]])),
            (ints(&[-1, -2]), orthant_polyhedron(&[[0, 2], [1, 0]])),
        ],
    )
    .unwrap()
}

fn r(v: i64) -> Rat {
    rat(v, 1)
}

/// Minimum of `⟨m, v⟩` over an explicit vertex list.
fn vertex_min(vertices: &[[i64; 2]], m: [i64; 2]) -> i64 {
    vertices.iter().map(|v| v[0] * m[0] + v[1] * m[1]).min().unwrap()
}

fn support_functions() -> Outcome {
    let shapes: [&[[i64; 2]]; 3] = [&[[0, 1], [1, 0]], &[[0, 1], [2, 0]], &[[0, 2], [1, 0]]];
    let mut n = 0;
    for shape in shapes {
        let p = orthant_polyhedron(shape);
        for a in 0..=20 {
            for b in 0..=20 {
                let got = p.support_eval_int(&ints(&[a, b])).map_err(|e| e.to_string())?;
                let closed = if shape == shapes[0] {
                    if a >= b { b } else { a }
                } else if shape == shapes[1] {
                    b.min(2 * a)
                } else {
                    (2 * b).min(a)
                };
                ensure(got == r(closed) && closed == vertex_min(shape, [a, b]), || {
                    format!("{shape:?} at ({a},{b}): {got} vs {closed}")
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} grid evaluations"))
}

fn divisor_evaluation() -> Outcome {
    let d = weil_divisor();
    let base = d.base();
    let i3 = base.ray_index(&ints(&[-2, -1])).unwrap();
    let i4 = base.ray_index(&ints(&[-1, -2])).unwrap();
    for a in 0..=20 {
        for b in 0..=20 {
            let e = d.evaluate(&ints(&[a, b])).map_err(|e| e.to_string())?;
            let (c3, c4) = if 2 * b <= a {
                (b, 2 * b)
            } else if b <= 2 * a {
                (b, a)
            } else {
                (2 * a, a)
            };
            ensure(e.coefficient(i3) == &r(c3) && e.coefficient(i4) == &r(c4), || {
                format!("at ({a},{b}): {e}")
            })?;
            for i in (0..4).filter(|&i| i != i3 && i != i4) {
                ensure(e.coefficient(i) == &r(0), || format!("stray coefficient at ({a},{b})"))?;
            }
        }
    }
    Ok("441 weights".into())
}

fn weil_line_downgrade() -> Outcome {
    let a = datum_of("weil_line_downgrade.json")?;
    ensure(a.base().rays() == [ints(&[-1]), ints(&[1])], || format!("rays {:?}", a.base().rays()))?;
    let d = a.divisor();
    let c = d.coefficient_at(&ints(&[-1])).ok_or("ray -1 missing")?;
    ensure(c == orthant_polyhedron(&[[1, 0], [0, 1]]), || format!("coefficient {c:?}"))?;
    ensure(d.coefficient_at(&ints(&[1])).unwrap().is_tail(), || "nontrivial coefficient at 1".into())?;
    ensure(a.tau_hat_y().matrix() == &IntMatrix::from_rows(&[[1]]), || "tau_hat_y".into())?;
    ensure(a.h_exponent().is_zero(), || format!("h exponent {}", a.h_exponent()))?;
    Ok("P = [-1,-1,1]".into())
}

fn diagonal_plane() -> Outcome {
    let a = datum_of("diagonal_plane_downgrade.json")?;
    ensure(a.base().rays() == [ints(&[-1]), ints(&[1])], || "base is not the projective line".into())?;
    let half_line = TailedPolyhedron::new(&[rats(&[1])], &Cone::orthant(1)).unwrap();
    ensure(a.divisor().coefficient_at(&ints(&[-1])).unwrap() == half_line, || "coefficient at -1".into())?;
    ensure(a.tau_hat_y().matrix() == &IntMatrix::from_rows(&[[-1]]), || "tau_hat_y".into())?;
    ensure(a.h_exponent() == &IntMatrix::from_rows(&[[1]]), || format!("h exponent {}", a.h_exponent()))?;
    let rep = check_real_compatibility(&a).map_err(|e| e.to_string())?;
    ensure(rep.passes(), || "compatibility with h = w fails".into())?;

    let forced = run(&problem("diagonal_plane_trivial_h.json"), &RunOptions::default()).map_err(|e| e.to_string())?;
    let f = forced.first_failure().ok_or("h = 1 unexpectedly compatible")?;
    ensure(f.detail.as_deref().is_some_and(|d| d.starts_with("fails at m = (1)")), || {
        format!("{f:?}")
    })?;

    let o = split_cocycle(&a.cocycle().map_err(|e| e.to_string())?);
    ensure(o.obstruction().is_some_and(|x| x.exponent.is_some()), || format!("{o:?}"))?;

    let b = datum_of("diagonal_space_downgrade.json")?;
    ensure(b.ambient().unwrap().equivariant_cosection, || "no equivariant cosection on 3-space".into())?;
    ensure(b.h_exponent().is_zero(), || "3-space twist nonzero".into())?;
    Ok("h = w, obstruction, 3-space h = 1".into())
}

fn weil_four_space() -> Outcome {
    let a = datum_of("weil_four_space_downgrade.json")?;
    let mut rays = a.base().rays().to_vec();
    rays.sort();
    let want = vec![ints(&[-2, -1]), ints(&[-1, -2]), ints(&[0, 1]), ints(&[1, 0])];
    ensure(rays == want, || format!("rays {rays:?}"))?;
    let d = a.divisor();
    ensure(
        d.coefficient_at(&ints(&[-2, -1])).unwrap() == orthant_polyhedron(&[[0, 1], [2, 0]])
            && d.coefficient_at(&ints(&[-1, -2])).unwrap() == orthant_polyhedron(&[[0, 2], [1, 0]]),
        || format!("divisor {d}"),
    )?;
    ensure(a.tau_hat_y() == &LatticeInvolution::swap(), || "tau_hat_y".into())?;
    ensure(a.h_exponent().is_zero(), || "h exponent".into())?;
    Ok("four rays, two coefficients".into())
}

fn circle_forms() -> Outcome {
    let opts = RunOptions::default();
    let plus = run(&problem("circle_positive_split.json"), &opts).map_err(|e| e.to_string())?;
    ensure(plus.result["outcome"] == "split" && plus.passed(), || plus.to_text())?;
    let minus = run(&problem("circle_negative_split.json"), &opts).map_err(|e| e.to_string())?;
    ensure(
        minus.result["outcome"] == "obstructed" && minus.result["sign_witnesses"] == serde_json::json!([[1]]),
        || minus.to_text(),
    )?;
    Ok("+1 splits, -1 obstructed".into())
}

fn oracle() -> Outcome {
    let opts = RunOptions {
        grid: 6,
        degree_bound: 8,
    };
    let mut total = 0;
    for name in ["weil_line_oracle.json", "weil_four_space_oracle.json"] {
        let rep = run(&problem(name), &opts).map_err(|e| e.to_string())?;
        if let Some(c) = rep.first_failure() {
            return Err(format!("{name}: {:?}", c.detail));
        }
        total += rep.result.as_array().map_or(0, Vec::len);
    }
    Ok(format!("{total} weights bijective"))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| Int::from(rng.random_range(-bound..=bound))).collect();
    IntMatrix::new(rows, cols, data).unwrap()
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..rng.random_range(0..10) {
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        if i == j {
            continue;
        }
        let c = Int::from(rng.random_range(-2i64..=2));
        for k in 0..n {
            let v = &u[(j, k)] * &c;
            u[(i, k)] += v;
        }
    }
    u
}

fn random_points(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Vec<Rat>> {
    (0..rng.random_range(1..=4))
        .map(|_| (0..dim).map(|_| rat(rng.random_range(-6..=6), rng.random_range(1..=3))).collect())
        .collect()
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    for _ in 0..500 {
        let (rows, cols) = (rng.random_range(1..=5), rng.random_range(1..=5));
        let a = random_matrix(&mut rng, rows, cols, 9);
        let s = smith_normal_form(&a);
        let d = s.diagonal();
        let divides = d.windows(2).all(|w| {
            w[1] == Int::from(0) || (w[0] != Int::from(0) && (&w[1] % &w[0]) == Int::from(0))
        });
        ensure(
            &(&s.u * &a) * &s.v == s.s && s.u.is_unimodular() && s.v.is_unimodular() && divides
                && d.iter().all(|x| *x >= Int::from(0)),
            || format!("smith form of {a}"),
        )?;
    }

    for _ in 0..200 {
        let dim = rng.random_range(1..=4);
        let gens: Vec<Vec<Int>> = (0..rng.random_range(1..=6))
            .map(|_| (0..dim).map(|_| Int::from(rng.random_range(-3i64..=3))).collect())
            .collect();
        let c = Cone::from_generators(&gens, dim).map_err(|e| e.to_string())?;
        ensure(c.dual().dual() == c, || format!("dual of dual of {gens:?}"))?;
    }

    for _ in 0..200 {
        let dim = rng.random_range(2..=3);
        let tail = if rng.random_bool(0.5) { Cone::orthant(dim) } else { Cone::zero(dim) };
        let p = TailedPolyhedron::new(&random_points(&mut rng, dim), &tail).unwrap();
        let q = TailedPolyhedron::new(&random_points(&mut rng, dim), &tail).unwrap();
        let sum = p.minkowski_sum(&q).map_err(|e| e.to_string())?;
        let m: Vec<Int> = (0..dim).map(|_| Int::from(rng.random_range(0i64..=5))).collect();
        let lhs = sum.support_eval_int(&m).unwrap();
        let rhs = p.support_eval_int(&m).unwrap() + q.support_eval_int(&m).unwrap();
        ensure(lhs == rhs, || format!("Minkowski additivity at {m:?}"))?;
    }

    let d = weil_divisor();
    for _ in 0..500 {
        let mut w = || ints(&[rng.random_range(0..=20), rng.random_range(0..=20)]);
        let (m1, m2, m3) = (w(), w(), w());
        let m12: Vec<Int> = m1.iter().zip(&m2).map(|(x, y)| x + y).collect();
        let ok = d.superadditivity_check(&m1, &m2).map_err(|e| e.to_string())?
            && d.superadditivity_check(&m12, &m3).map_err(|e| e.to_string())?;
        ensure(ok, || format!("superadditivity at {m1:?}, {m2:?}, {m3:?}"))?;
    }

    for _ in 0..200 {
        let t = loop {
            let t = InvolutionType {
                n0: rng.random_range(0..=3),
                n1: rng.random_range(0..=3),
                n2: rng.random_range(0..=2),
            };
            if t.rank() <= 5 {
                break t;
            }
        };
        let u = random_unimodular(&mut rng, t.rank());
        let tau = LatticeInvolution::standard(t).conjugate(&u).map_err(|e| e.to_string())?;
        ensure(tau.classify() == t, || format!("type of {}", tau.matrix()))?;
    }

    let mut points = 0;
    for name in [
        "weil_line_downgrade.json",
        "diagonal_plane_downgrade.json",
        "diagonal_space_downgrade.json",
        "weil_four_space_downgrade.json",
    ] {
        let a = datum_of(name)?;
        let k = a.base().rank();
        let (lo, hi) = (vec![Int::from(-8); k], vec![Int::from(8); k]);
        let dim = a.tau_hat().rank();
        for m in grid(dim, 0, 4) {
            if !a.weight_cone().contains(&m) {
                continue;
            }
            for p in graded_piece(&a, &m, &lo, &hi).map_err(|e| e.to_string())?.points {
                let once = piece_involution(&a, &m, &p).map_err(|e| e.to_string())?;
                let twice = piece_involution(&a, &once.weight, &once.point).map_err(|e| e.to_string())?;
                ensure(twice.weight == m && twice.point == p && once.sign * twice.sign == 1, || {
                    format!("{name} at {m:?}, {p:?}")
                })?;
                points += 1;
            }
        }
    }
    let c = datum_of_circle()?;
    for m in [ints(&[1]), ints(&[-1]), ints(&[3])] {
        let once = piece_involution(&c, &m, &[]).map_err(|e| e.to_string())?;
        let twice = piece_involution(&c, &once.weight, &once.point).map_err(|e| e.to_string())?;
        ensure(twice.weight == m && once.sign * twice.sign == 1, || format!("circle at {m:?}"))?;
        points += 1;
    }

    for name in ["weil_line_downgrade.json", "weil_four_space_downgrade.json"] {
        let Problem::Downgrade(p) = problem(name) else {
            return Err(format!("{name} is not a downgrade"));
        };
        let a = downgrade_with(&p.embedding, &p.options).map_err(|e| e.to_string())?;
        let amb = a.ambient().unwrap();
        let (proj, s1) = (amb.projection.clone(), amb.cosection.clone());
        let s0 = random_matrix(&mut rng, s1.rows(), proj.rows(), 2);
        let s2 = &s1 + &(&s0 * &proj);
        ensure(s2 != s1 || s0.is_zero(), || "cosections coincide".into())?;
        let b = downgrade_with(
            &p.embedding,
            &DowngradeOptions {
                projection: Some(proj.clone()),
                cosection: Some(s2.clone()),
            },
        )
        .map_err(|e| e.to_string())?;
        ensure(cosection_shift(&s2, &s1, &proj).map_err(|e| e.to_string())? == s0, || "shift".into())?;
        let shifted = shift_coefficients(a.divisor(), &s0).map_err(|e| e.to_string())?;
        ensure(&shifted == b.divisor(), || format!("{name}: twist relation"))?;
    }

    Ok(format!("{points} involution points"))
}

fn datum_of_circle() -> Result<AHDatum, String> {
    let tail = Cone::zero(1);
    let d = PolyhedralDivisor::new(ToricBase::point(), tail, vec![]).map_err(|e| e.to_string())?;
    AHDatum::new(
        d,
        LatticeInvolution::identity(0),
        LatticeInvolution::negation(1),
        IntMatrix::zeros(0, 1),
        SignCharacter::from_bits(vec![true]),
    )
    .map_err(|e| e.to_string())
}

fn grid(dim: usize, lo: i64, hi: i64) -> Vec<Vec<Int>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.iter().map(|v| ints(v)).collect()
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("support functions on the grid", support_functions, Duration::from_secs(1)),
        ("three-branch divisor evaluation", divisor_evaluation, Duration::from_secs(1)),
        ("downgrade of the Weil restriction times a line", weil_line_downgrade, Duration::from_secs(1)),
        ("diagonal line on the plane and in 3-space", diagonal_plane, Duration::from_secs(1)),
        ("Weil restriction on 4-space", weil_four_space, Duration::from_secs(1)),
        ("circle forms", circle_forms, Duration::from_secs(1)),
        ("graded dimension oracle, degree bound 8", oracle, Duration::from_secs(30)),
        ("property suites", property_suites, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = start.elapsed();
        let timing = format!("{:.3}s of {}s", t.as_secs_f64(), budget.as_secs());
        match outcome {
            Ok(note) if t <= *budget => println!("PASS {} {name}: {note} ({timing})", i + 1),
            Ok(note) => {
                failed += 1;
                println!("FAIL {} {name}: over budget, {note} ({timing})", i + 1);
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name}: {e} ({timing})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
