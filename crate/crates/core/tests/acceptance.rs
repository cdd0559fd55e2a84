//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line. Tolerances are pinned; any relaxation is a code change.

use std::time::Instant;

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use orthopoly::constructions::{
    build_axis_set, build_greedy_box, build_greedy_set, check_necessary_condition,
};
use orthopoly::density::{density_estimate, lattice_points};
use orthopoly::fixtures::{
    hexagon_lattice_density, hexagon_spec, hexagon_vertices, quintic_kernel_rows,
    quintic_shadow_vertices, quintic_sigma_rows, quintic_spec,
};
use orthopoly::fourier::{
    companion_sum, fourier_lawrence, fourier_oracle, is_singular, moment,
};
use orthopoly::geometry::{cube, hull_from_vertices, project_zonotope, Polytope};
use orthopoly::intlat::lattice_eq;
use orthopoly::linalg;
use orthopoly::rat::{rat, rat_i64};
use orthopoly::verify::orthogonality_report;
use orthopoly::weighted::{
    build_lambda, density_bound, integer_kernel, weighted_orthogonality_check, MatrixData,
    WeightEvaluator, WeightMethod, ZonotopeSpec,
};
use orthopoly::{Rat, Scalar};

fn report(id: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {:02} {}: {} ({})",
        id,
        name,
        if pass { "PASS" } else { "FAIL" },
        detail
    );
    assert!(pass, "criterion {id} {name} failed: {detail}");
}

fn fig1() -> Polytope<Rat> {
    orthopoly::fixtures::trapezoid()
}

fn rational(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-8..=8), rng.gen_range(1..=3))
}

/// Random convex polygon with rational vertices.
fn random_polygon(rng: &mut ChaCha8Rng) -> Polytope<Rat> {
    loop {
        let pts: Vec<Vec<Rat>> = (0..6).map(|_| vec![rational(rng), rational(rng)]).collect();
        if let Ok(p) = hull_from_vertices(&pts, 2) {
            if p.vertices().len() >= 3 {
                return p;
            }
        }
    }
}

/// Random prism: a rational polygon extruded along the z-axis (always a
/// simple 3-polytope).
fn random_prism(rng: &mut ChaCha8Rng) -> Polytope<Rat> {
    loop {
        let base = random_polygon(rng);
        let lo = rational(rng);
        let hi = lo.clone() + rat(rng.gen_range(1..=6), rng.gen_range(1..=2));
        let mut pts: Vec<Vec<Rat>> = Vec::new();
        for v in base.vertices() {
            pts.push(vec![v[0].clone(), v[1].clone(), lo.clone()]);
            pts.push(vec![v[0].clone(), v[1].clone(), hi.clone()]);
        }
        if let Ok(p) = hull_from_vertices(&pts, 3) {
            if p.is_simple() {
                return p;
            }
        }
    }
}

/// Random nondegenerate affine image of the cube (always simple).
fn random_affine_cube(rng: &mut ChaCha8Rng) -> Polytope<Rat> {
    loop {
        let m: Vec<Vec<Rat>> = (0..3)
            .map(|_| (0..3).map(|_| rational(rng)).collect())
            .collect();
        if linalg::det(&m, 0.0) == <Rat as Scalar>::zero() {
            continue;
        }
        let t: Vec<Rat> = (0..3).map(|_| rational(rng)).collect();
        if let Ok(p) = cube::<Rat>(3).affine_map(&m, &t) {
            return p;
        }
    }
}

fn sweep_polytopes(rng: &mut ChaCha8Rng) -> Vec<Polytope<Rat>> {
    let mut out = vec![fig1(), cube::<Rat>(2), cube::<Rat>(3)];
    for _ in 0..12 {
        out.push(random_polygon(rng));
    }
    for _ in 0..4 {
        out.push(random_prism(rng));
    }
    for _ in 0..4 {
        out.push(random_affine_cube(rng));
    }
    out
}

fn random_nonsingular_omega(p: &Polytope<Rat>, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let omega: Vec<f64> = (0..p.dim()).map(|_| rng.gen_range(-5.0..5.0)).collect();
        if omega.iter().any(|&x| x.abs() > 1e-3) && !is_singular(p, &omega) {
            return omega;
        }
    }
}

#[test]
fn criterion_01_transform_agreement() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let polytopes = sweep_polytopes(&mut rng);
    assert_eq!(polytopes.len(), 23);
    let mut worst = 0.0_f64;
    for p in &polytopes {
        let vol = p.to_f64().volume();
        for _ in 0..500 {
            let omega = random_nonsingular_omega(p, &mut rng);
            let law = fourier_lawrence(p, &omega).unwrap().value;
            let ora = fourier_oracle(p, &omega).value;
            let residual = (law - ora).norm() / (1e-9 * (ora.norm() + vol));
            worst = worst.max(residual);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        1,
        "vertex formula vs simplex oracle",
        worst <= 1.0 && elapsed <= 60.0,
        &format!("worst residual {worst:.3e} of tolerance, {elapsed:.1}s"),
    );
}

#[test]
fn criterion_02_companion_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let polytopes = sweep_polytopes(&mut rng);
    let mut worst = 0.0_f64;
    for p in &polytopes {
        for _ in 0..100 {
            let omega = random_nonsingular_omega(p, &mut rng);
            for j in 0..p.dim() {
                let (value, mass) = companion_sum(p, &omega, j).unwrap();
                worst = worst.max(value.abs() / mass.max(1e-300));
            }
        }
    }
    report(
        2,
        "companion vertex-sum identities",
        worst <= 1e-9,
        &format!("worst relative residual {worst:.3e}"),
    );
}

#[test]
fn criterion_03_moment_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let polytopes = sweep_polytopes(&mut rng);
    let mut worst = 0.0_f64;
    for p in &polytopes {
        let vol = p.to_f64().volume();
        for _ in 0..100 {
            let omega = random_nonsingular_omega(p, &mut rng);
            for j in 0..=2 {
                let (lhs, rhs) = moment(p, &omega, j).unwrap();
                let scale = lhs.abs().max(rhs.abs()).max(vol);
                worst = worst.max((lhs - rhs).abs() / scale);
            }
        }
    }
    report(
        3,
        "moment formula both sides",
        worst <= 1e-9,
        &format!("worst relative residual {worst:.3e}"),
    );
}

#[test]
fn criterion_04_greedy_fifty_points() {
    let start = Instant::now();
    let p = fig1();
    let set = build_greedy_set(&p, 50, 128).unwrap();
    let rep = orthogonality_report(&p, &set, 1e-8);
    let elapsed = start.elapsed().as_secs_f64();
    report(
        4,
        "greedy 50-point orthogonality",
        rep.pair_count == 1225 && rep.pass() && elapsed <= 120.0,
        &format!(
            "{} pairs, max residual {:.3e}, {elapsed:.1}s",
            rep.pair_count, rep.max_residual
        ),
    );
}

#[test]
fn criterion_05_axis_frequencies() {
    let triangle: Vec<Vec<Rat>> = [[0_i64, 0], [1, 0], [2, 1]]
        .iter()
        .map(|v| v.iter().map(|&c| rat_i64(c)).collect())
        .collect();
    let triangle = hull_from_vertices(&triangle, 2).unwrap();
    let mut worst = 0.0_f64;
    for p in [&triangle, &fig1()] {
        // The axis construction must accept these polytopes for k = 1.
        let axis = build_axis_set(p, 0, 21).unwrap();
        let scaled = axis.scaled_polytope.to_f64();
        let vol = scaled.volume();
        for j in 1..=20 {
            let omega = vec![2.0 * std::f64::consts::PI * j as f64, 0.0];
            let value = fourier_oracle(&scaled, &omega).value.norm();
            worst = worst.max(value / (1e-8 * vol));
        }
    }
    report(
        5,
        "axis lattice frequencies vanish",
        worst <= 1.0,
        &format!("worst residual {worst:.3e} of tolerance"),
    );
}

#[test]
fn criterion_06_necessary_condition_witnesses() {
    let p = fig1();
    let greedy = build_greedy_set(&p, 50, 128).unwrap();
    let greedy_report = check_necessary_condition(&p, &greedy, 1e-9).unwrap();

    let triangle: Vec<Vec<Rat>> = [[0_i64, 0], [1, 0], [2, 1]]
        .iter()
        .map(|v| v.iter().map(|&c| rat_i64(c)).collect())
        .collect();
    let triangle = hull_from_vertices(&triangle, 2).unwrap();
    let mut all = greedy_report.all_witnessed();
    let mut residual = greedy_report
        .witnesses
        .iter()
        .map(|w| w.residual)
        .fold(0.0, f64::max);
    for p in [&triangle, &p] {
        let axis = build_axis_set(p, 0, 21).unwrap();
        let rep = check_necessary_condition(&axis.scaled_polytope, &axis.set, 1e-9).unwrap();
        all = all && rep.all_witnessed();
        residual = rep.witnesses.iter().map(|w| w.residual).fold(residual, f64::max);
    }
    report(
        6,
        "vertex-pair witnesses",
        all && residual <= 1e-9,
        &format!("all witnessed, max residual {residual:.3e}"),
    );
}

#[test]
fn criterion_07_hexagon_reproduction() {
    let mut pass = true;
    let mut detail = String::new();
    for (p, q) in [(1_i64, 1_i64), (1, 2)] {
        let spec = hexagon_spec(p, q);
        let kb = integer_kernel(&spec).unwrap();
        let db = density_bound(&spec, &kb).unwrap();
        let exact = hexagon_lattice_density(p, q);
        let exact_rel = (db.lattice_density - exact).abs() / exact;
        pass &= exact_rel <= 1e-10;

        let build = build_lambda(&spec, &kb, 1).unwrap();
        let basis: Vec<Vec<f64>> = build
            .a
            .iter()
            .map(|row| row.iter().map(|x| std::f64::consts::PI * x).collect())
            .collect();
        let rho = 200.0;
        let points = lattice_points(&basis, 2.0 * rho * 1.01).unwrap();
        let est = density_estimate(&points, 2, 2.0 * rho * 1.01, &[rho]).unwrap();
        let counted_rel = (est.mean_ratios[0] - exact).abs() / exact;
        pass &= counted_rel <= 0.05;

        let shadow = project_zonotope(&spec.matrix_f64(), 2).unwrap();
        let expected = hexagon_vertices(p, q);
        let verts_ok = shadow.vertices().len() == 6
            && expected.iter().all(|want| {
                shadow
                    .vertices()
                    .iter()
                    .any(|v| v.iter().zip(want).all(|(a, b)| (a - b).abs() <= 1e-10))
            });
        pass &= verts_ok;
        detail.push_str(&format!(
            "(p={p},q={q}: exact rel {exact_rel:.2e}, counted rel {counted_rel:.3}, vertices {verts_ok}) "
        ));
    }
    report(7, "hexagon example reproduction", pass, detail.trim());
}

#[test]
fn criterion_08_quintic_reproduction() {
    let spec = quintic_spec();
    let kb = integer_kernel(&spec).unwrap();
    let kernel_ok = lattice_eq(&kb.rows, &quintic_kernel_rows()).unwrap();

    let build = build_lambda(&spec, &kb, 1).unwrap();
    let computed: Vec<Vec<BigInt>> = build
        .sigmas
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x.round() as i64)).collect())
        .collect();
    let sigma_exactness = build
        .sigmas
        .iter()
        .flatten()
        .map(|&x| (x - x.round()).abs())
        .fold(0.0, f64::max);
    let expected: Vec<Vec<BigInt>> = quintic_sigma_rows()
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x as i64)).collect())
        .collect();
    let lattice_ok = sigma_exactness <= 1e-10 && lattice_eq(&computed, &expected).unwrap();

    let shadow = project_zonotope(&spec.matrix_f64(), 3).unwrap();
    let wanted = quintic_shadow_vertices();
    let verts_ok = shadow.vertices().len() == 12
        && wanted.iter().all(|want| {
            shadow
                .vertices()
                .iter()
                .any(|v| v.iter().zip(want).all(|(a, b)| (a - b).abs() <= 1e-10))
        });
    report(
        8,
        "quintic example reproduction",
        kernel_ok && lattice_ok && verts_ok,
        &format!("kernel {kernel_ok}, lattice {lattice_ok}, vertices {verts_ok}"),
    );
}

/// The closed-form shift from the hexagon example (p = q = 1 branch): moves
/// the nominal line base point strictly inside the cube.
fn hexagon_shift_s(p: i64, q: i64, x1: f64, x2: f64) -> f64 {
    let (pf, qf) = (p as f64, q as f64);
    let delta = (qf * qf + 2.0 * pf * pf).sqrt();
    let s2 = 2.0_f64.sqrt();
    let a = (2.0 * pf * pf - qf * qf) * x1 / (s2 * delta);
    let b = qf * x2.abs() / s2;
    // Branch conditions, tried in order; the sign ambiguity in the source is
    // read as "for some choice of sign".
    if a + b >= qf - pf || -a + b >= qf - pf {
        return qf * x1 / (s2 * pf);
    }
    if a - b >= pf - qf || -a - b >= pf - qf {
        return s2 * pf * x1 / qf;
    }
    if a + b >= qf - pf && a - b >= -(qf - pf) {
        return delta / (2.0 * pf) - delta / (2.0 * qf) - delta * x2.abs() / (2.0 * s2 * pf)
            + delta * delta * x1 / (2.0 * s2 * pf * qf);
    }
    -delta / (2.0 * pf) + delta / (2.0 * qf) + delta * x2.abs() / (2.0 * s2 * pf)
        + delta * delta * x1 / (2.0 * s2 * pf * qf)
}

#[test]
fn criterion_09_weight_cross_validation() {
    let spec = hexagon_spec(1, 1);
    let line = WeightEvaluator::new(&spec, WeightMethod::LineLength).unwrap();
    let slice = WeightEvaluator::new(&spec, WeightMethod::SlicePolytope).unwrap();
    let inv = spec.inverse_f64();
    let mat = spec.matrix_f64();
    let y_radius: f64 = (0..3).map(|k| mat[2][k].abs()).sum();

    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut worst_pair = 0.0_f64;
    let mut worst_mc = 0.0_f64;
    let mut shifts_ok = true;
    // 25 interior grid points of the hexagon (|x1| <= 0.6, |x2| <= 1.0).
    for i in 0..5 {
        for j in 0..5 {
            let x1 = -0.6 + 0.3 * i as f64;
            let x2 = -1.0 + 0.5 * j as f64;
            let a = line.eval(&[x1, x2]);
            let b = slice.eval(&[x1, x2]);
            worst_pair = worst_pair.max((a - b).abs());

            // Stratified Monte Carlo over the fiber coordinate: 1e6 jittered
            // strata of the indicator of the cube preimage.
            let n = 1_000_000_usize;
            let width = 2.0 * y_radius / n as f64;
            let mut hits = 0_u64;
            for s in 0..n {
                let y = -y_radius + (s as f64 + rng.gen_range(0.0..1.0)) * width;
                let inside = (0..3).all(|r| {
                    (inv[r][0] * x1 + inv[r][1] * x2 + inv[r][2] * y).abs() <= 1.0
                });
                if inside {
                    hits += 1;
                }
            }
            let mc = hits as f64 * width;
            worst_mc = worst_mc.max((mc - a).abs());

            // The published piecewise shift must land strictly inside.
            let s = hexagon_shift_s(1, 1, x1, x2);
            let u: Vec<f64> = (0..3)
                .map(|c| mat[0][c] * x1 + mat[1][c] * x2)
                .collect();
            let v: Vec<f64> = (0..3).map(|c| mat[2][c]).collect();
            shifts_ok &= (0..3).all(|c| (u[c] + s * v[c]).abs() < 1.0);
        }
    }
    report(
        9,
        "weight method cross-validation",
        worst_pair <= 1e-8 && worst_mc <= 1e-3 && shifts_ok,
        &format!(
            "line/slice gap {worst_pair:.3e}, MC gap {worst_mc:.3e}, shifts interior {shifts_ok}"
        ),
    );
}

#[test]
fn criterion_10_weighted_orthogonality() {
    let mut pass = true;
    let mut detail = String::new();

    let hex = hexagon_spec(1, 1);
    let hex_kb = integer_kernel(&hex).unwrap();
    let combos2: [(i64, i64); 10] = [
        (1, 0),
        (0, 1),
        (1, 1),
        (1, -1),
        (2, 0),
        (0, 2),
        (2, 1),
        (1, 2),
        (2, -1),
        (-1, 2),
    ];
    let rows = hex_kb.rows_i64().unwrap();
    let mut worst = 0.0_f64;
    for (a, b) in combos2 {
        let kbar: Vec<i64> = (0..3).map(|j| a * rows[0][j] + b * rows[1][j]).collect();
        let check = weighted_orthogonality_check(&hex, &hex_kb, &kbar).unwrap();
        worst = worst.max(check.integral_value / (1e-6 * check.mass));
    }
    pass &= worst <= 1.0;
    detail.push_str(&format!("hexagon worst {worst:.3e} of tolerance; "));

    let quintic = quintic_spec();
    let q_kb = integer_kernel(&quintic).unwrap();
    let q_rows = q_kb.rows_i64().unwrap();
    let combos3: [(i64, i64, i64); 10] = [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (1, 1, 0),
        (1, 0, 1),
        (0, 1, 1),
        (1, 1, 1),
        (1, -1, 0),
        (0, 1, -1),
        (2, 0, -1),
    ];
    let mut worst_q = 0.0_f64;
    for (a, b, c) in combos3 {
        let kbar: Vec<i64> = (0..5)
            .map(|j| a * q_rows[0][j] + b * q_rows[1][j] + c * q_rows[2][j])
            .collect();
        let check = weighted_orthogonality_check(&quintic, &q_kb, &kbar).unwrap();
        worst_q = worst_q.max(check.integral_value / (1e-6 * check.mass));
    }
    pass &= worst_q <= 1.0;
    detail.push_str(&format!("quintic worst {worst_q:.3e} of tolerance"));
    report(10, "weighted orthogonality residuals", pass, &detail);
}

#[test]
fn criterion_11_density_decay_vs_lattice() {
    let pi = std::f64::consts::PI;
    let rhos = [50.0 * pi, 200.0 * pi];

    // Greedy set for the trapezoid: counting ratio must strictly decay.
    let p = fig1();
    let set = build_greedy_box(&p, 200).unwrap();
    let covered = 200.0 * set.scale;
    let est = density_estimate(&set.points, 2, covered, &rhos).unwrap();
    let decay = est.sup_ratios[1] < est.sup_ratios[0];

    // The hexagon-example lattice holds steady between the same radii.
    let spec = hexagon_spec(1, 1);
    let kb = integer_kernel(&spec).unwrap();
    let build = build_lambda(&spec, &kb, 1).unwrap();
    let basis: Vec<Vec<f64>> = build
        .a
        .iter()
        .map(|row| row.iter().map(|x| pi * x).collect())
        .collect();
    let points = lattice_points(&basis, 2.0 * rhos[1] * 1.01).unwrap();
    let lat = density_estimate(&points, 2, 2.0 * rhos[1] * 1.01, &rhos).unwrap();
    let drift = (lat.sup_ratios[1] - lat.sup_ratios[0]).abs() / lat.sup_ratios[0];

    report(
        11,
        "greedy ratio decay vs lattice stability",
        decay && drift < 0.10,
        &format!(
            "greedy ratios {:.3e} -> {:.3e}, lattice drift {:.3}",
            est.sup_ratios[0], est.sup_ratios[1], drift
        ),
    );
}

#[test]
fn criterion_12_determinant_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(112);
    let mut worst = 0.0_f64;
    let mut done = 0;
    while done < 50 {
        let d = rng.gen_range(2..=4);
        let m = rng.gen_range(1..d);
        let matrix: Vec<Vec<Rat>> = (0..d)
            .map(|_| (0..d).map(|_| rational(&mut rng)).collect())
            .collect();
        if linalg::det(&matrix, 0.0) == <Rat as Scalar>::zero() {
            continue;
        }
        let spec = ZonotopeSpec::new(MatrixData::Exact(matrix), m).unwrap();
        let kb = integer_kernel(&spec).unwrap();
        let db = density_bound(&spec, &kb).unwrap();
        worst = worst.max(db.det_identity_residual / db.det_a.abs());
        done += 1;
    }
    report(
        12,
        "determinant identity on random instances",
        worst <= 1e-9,
        &format!("worst relative residual {worst:.3e} over 50 instances"),
    );
}
