//! Subcommand implementations and report writing.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::json;

use orthopoly::constructions::{
    build_axis_set, build_greedy_set, check_necessary_condition, OrthoSet, Provenance,
};
use orthopoly::density::density_estimate;
use orthopoly::fixtures;
use orthopoly::fourier::{fourier_lawrence, fourier_oracle, is_singular};
use orthopoly::geometry::project_zonotope;
use orthopoly::intlat::lattice_eq;
use orthopoly::verify::orthogonality_report;
use orthopoly::weighted::{
    build_lambda, density_bound, integer_kernel, weight_grid, weighted_orthogonality_check,
    WeightEvaluator, WeightMethod, ZonotopeSpec,
};

use crate::{io, Cli, Command};

/// Optional overrides from `--config`; any value present wins over the
/// corresponding flag.
#[derive(Deserialize, Default)]
struct ConfigFile {
    tol: Option<f64>,
    seed: Option<u64>,
    output_dir: Option<PathBuf>,
}

struct Context_ {
    output_dir: PathBuf,
    tol: f64,
    seed: u64,
    config_hash: Option<String>,
}

impl Context_ {
    fn header(&self, input_hashes: &[String]) -> serde_json::Value {
        json!({
            "version": env!("CARGO_PKG_VERSION"),
            "seed": self.seed,
            "tolerance": self.tol,
            "input_hashes": input_hashes,
            "config_hash": self.config_hash,
        })
    }

    fn write_report(&self, name: &str, body: serde_json::Value) -> Result<PathBuf> {
        let path = self.output_dir.join(name);
        std::fs::write(&path, format!("{}\n", serde_json::to_string_pretty(&body)?))
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let mut ctx = Context_ {
        output_dir: cli.output_dir.clone(),
        tol: cli.tol,
        seed: cli.seed,
        config_hash: None,
    };
    if let Some(cfg_path) = &cli.config {
        let (text, hash) = io::read_hashed(cfg_path)?;
        let cfg: ConfigFile =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", cfg_path.display()))?;
        if let Some(tol) = cfg.tol {
            ctx.tol = tol;
        }
        if let Some(seed) = cfg.seed {
            ctx.seed = seed;
        }
        if let Some(dir) = cfg.output_dir {
            ctx.output_dir = dir;
        }
        ctx.config_hash = Some(hash);
    }
    if ctx.tol <= 0.0 {
        bail!("tolerance must be positive, got {}", ctx.tol);
    }
    std::fs::create_dir_all(&ctx.output_dir)
        .with_context(|| format!("creating {}", ctx.output_dir.display()))?;

    match &cli.command {
        Command::Construct(args) => construct(&ctx, args),
        Command::Verify(args) => verify(&ctx, args),
        Command::Fourier(args) => fourier(&ctx, args),
        Command::Density(args) => density(&ctx, args),
        Command::Zonotope(args) => zonotope(&ctx, args),
        Command::Fixtures(args) => fixtures_cmd(&ctx, args),
    }
}

fn set_to_json(set: &OrthoSet) -> serde_json::Value {
    json!({
        "dim": set.dim,
        "count": set.points.len(),
        "scale": set.scale,
        "provenance": format!("{:?}", set.provenance),
    })
}

fn construct(ctx: &Context_, args: &crate::ConstructArgs) -> Result<()> {
    let (p, hash) = io::load_polytope(&args.polytope)?;
    let (set, check_polytope) = match args.theorem.as_str() {
        "21" => (build_greedy_set(&p, args.count, args.enum_bound)?, p.clone()),
        "22" => {
            if args.axis == 0 || args.axis > p.dim() {
                bail!("axis {} out of range 1..={}", args.axis, p.dim());
            }
            let axis = build_axis_set(&p, args.axis - 1, args.count)?;
            (axis.set, axis.scaled_polytope)
        }
        other => bail!("unknown theorem {other}"),
    };
    let rep = orthogonality_report(&check_polytope, &set, ctx.tol);
    let witnesses = check_necessary_condition(&check_polytope, &set, 1e-9)?;
    let csv_path = ctx.output_dir.join("lambda.csv");
    io::write_points_csv(&csv_path, &set.points)?;
    let report = json!({
        "header": ctx.header(&[hash]),
        "set": set_to_json(&set),
        "orthogonality": {
            "pairs": rep.pair_count,
            "max_residual": rep.max_residual,
            "pass": rep.pass(),
        },
        "necessary_condition_witnessed": witnesses.all_witnessed(),
        "lambda_csv": csv_path.display().to_string(),
    });
    let path = ctx.write_report("construct_report.json", report)?;
    println!("{}", path.display());
    if !rep.pass() {
        bail!("constructed set failed verification (max residual {})", rep.max_residual);
    }
    Ok(())
}

fn verify(ctx: &Context_, args: &crate::VerifyArgs) -> Result<()> {
    let (p, phash) = io::load_polytope(&args.polytope)?;
    let (points, lhash) = io::load_points_csv(&args.lambda)?;
    if points.iter().any(|row| row.len() != p.dim()) {
        bail!("lambda rows must have dimension {}", p.dim());
    }
    let set = OrthoSet {
        dim: p.dim(),
        points,
        provenance: Provenance::External,
        scale: 1.0,
        integer_coords: None,
    };
    let rep = orthogonality_report(&p, &set, ctx.tol);
    let report = json!({
        "header": ctx.header(&[phash, lhash]),
        "pairs": rep.pair_count,
        "max_residual": rep.max_residual,
        "failing_pairs": rep.failing_pairs,
        "pass": rep.pass(),
    });
    let path = ctx.write_report("verify_report.json", report)?;
    println!("{}", path.display());
    if !rep.pass() {
        bail!("orthogonality verification failed (max residual {})", rep.max_residual);
    }
    Ok(())
}

fn fourier(ctx: &Context_, args: &crate::FourierArgs) -> Result<()> {
    let (p, hash) = io::load_polytope(&args.polytope)?;
    let omega = io::parse_f64_list(&args.omega)?;
    if omega.len() != p.dim() {
        bail!("omega must have dimension {}", p.dim());
    }
    let oracle = fourier_oracle(&p, &omega);
    let singular = is_singular(&p, &omega);
    let lawrence = if singular {
        None
    } else {
        Some(fourier_lawrence(&p, &omega)?)
    };
    let report = json!({
        "header": ctx.header(&[hash]),
        "omega": omega,
        "oracle": { "re": oracle.value.re, "im": oracle.value.im },
        "lawrence": lawrence.map(|v| json!({ "re": v.value.re, "im": v.value.im })),
        "singular": singular,
        "volume": p.to_f64().volume(),
    });
    let path = ctx.write_report("fourier_report.json", report)?;
    println!("{}", path.display());
    Ok(())
}

fn density(ctx: &Context_, args: &crate::DensityArgs) -> Result<()> {
    let (points, hash) = io::load_points_csv(&args.points)?;
    let dim = points[0].len();
    let rhos = io::parse_f64_list(&args.rho)?;
    let est = density_estimate(&points, dim, args.covered, &rhos)?;
    let csv_path = ctx.output_dir.join("density_ratios.csv");
    let rows: Vec<Vec<f64>> = (0..rhos.len())
        .map(|i| {
            vec![
                est.rhos[i],
                est.sup_ratios[i],
                est.inf_ratios[i],
                est.mean_ratios[i],
            ]
        })
        .collect();
    io::write_points_csv(&csv_path, &rows)?;
    let report = json!({
        "header": ctx.header(&[hash]),
        "rhos": est.rhos,
        "sup_counts": est.sup_counts,
        "inf_counts": est.inf_counts,
        "sup_ratios": est.sup_ratios,
        "inf_ratios": est.inf_ratios,
        "mean_ratios": est.mean_ratios,
        "ratios_csv": csv_path.display().to_string(),
    });
    let path = ctx.write_report("density_report.json", report)?;
    println!("{}", path.display());
    Ok(())
}

fn zonotope_payload(ctx: &Context_, spec: &ZonotopeSpec, sample_count: usize) -> Result<serde_json::Value> {
    let kb = integer_kernel(spec)?;
    let build = build_lambda(spec, &kb, sample_count)?;
    let db = density_bound(spec, &kb)?;
    let rows = kb.rows_i64()?;
    let mut residuals = Vec::new();
    for row in &rows {
        let check = weighted_orthogonality_check(spec, &kb, row)?;
        residuals.push(json!({
            "kbar": row,
            "product_value": check.product_value,
            "integral_value": check.integral_value,
            "route": check.integral_route,
            "mass": check.mass,
        }));
    }
    let _ = ctx;
    Ok(json!({
        "kernel": { "rows": rows, "source": format!("{:?}", kb.source) },
        "sigma_rows": build.sigmas,
        "density": {
            "lattice_density": db.lattice_density,
            "bound": db.bound,
            "bound_full_exponent": db.bound_full_exponent,
            "det_identity_residual": db.det_identity_residual,
        },
        "weighted_residuals": residuals,
    }))
}

fn write_weight_grid(ctx: &Context_, spec: &ZonotopeSpec, grid: usize) -> Result<Option<PathBuf>> {
    if spec.m > 2 {
        return Ok(None);
    }
    let w = WeightEvaluator::new(spec, WeightMethod::SlicePolytope)?;
    let r = w.support_radius();
    let mut points = Vec::new();
    if spec.m == 1 {
        for i in 0..grid {
            points.push(vec![-r[0] + 2.0 * r[0] * i as f64 / (grid - 1) as f64]);
        }
    } else {
        for i in 0..grid {
            for j in 0..grid {
                points.push(vec![
                    -r[0] + 2.0 * r[0] * i as f64 / (grid - 1) as f64,
                    -r[1] + 2.0 * r[1] * j as f64 / (grid - 1) as f64,
                ]);
            }
        }
    }
    let values = weight_grid(&w, &points);
    let rows: Vec<Vec<f64>> = points
        .into_iter()
        .zip(values)
        .map(|(mut p, v)| {
            p.push(v);
            p
        })
        .collect();
    let csv_path = ctx.output_dir.join("weight_grid.csv");
    io::write_points_csv(&csv_path, &rows)?;
    Ok(Some(csv_path))
}

fn zonotope(ctx: &Context_, args: &crate::ZonotopeArgs) -> Result<()> {
    let (spec, hashes) = io::load_zonotope(&args.matrix, args.m, args.kernel.as_deref())?;
    let payload = zonotope_payload(ctx, &spec, args.count)?;
    let kb = integer_kernel(&spec)?;
    let build = build_lambda(&spec, &kb, args.count)?;
    let lambda_csv = ctx.output_dir.join("lambda_sample.csv");
    io::write_points_csv(&lambda_csv, &build.set.points)?;
    let grid_csv = write_weight_grid(ctx, &spec, args.grid)?;
    let report = json!({
        "header": ctx.header(&hashes),
        "result": payload,
        "lambda_csv": lambda_csv.display().to_string(),
        "weight_grid_csv": grid_csv.map(|p| p.display().to_string()),
    });
    let path = ctx.write_report("zonotope_report.json", report)?;
    println!("{}", path.display());
    Ok(())
}

fn vertices_match(computed: &[Vec<f64>], expected: &[Vec<f64>], tol: f64) -> bool {
    computed.len() == expected.len()
        && expected.iter().all(|want| {
            computed
                .iter()
                .any(|v| v.iter().zip(want).all(|(a, b)| (a - b).abs() <= tol))
        })
}

fn fixtures_cmd(ctx: &Context_, args: &crate::FixturesArgs) -> Result<()> {
    match args.name.as_str() {
        "fig1" => {
            let p = fixtures::trapezoid();
            let set = build_greedy_set(&p, 20, 64)?;
            let rep = orthogonality_report(&p, &set, ctx.tol);
            let csv_path = ctx.output_dir.join("fig1_lambda.csv");
            io::write_points_csv(&csv_path, &set.points)?;
            let report = json!({
                "header": ctx.header(&[]),
                "set": set_to_json(&set),
                "orthogonality_pass": rep.pass(),
                "max_residual": rep.max_residual,
                "lambda_csv": csv_path.display().to_string(),
            });
            let path = ctx.write_report("fig1_report.json", report)?;
            println!("{}", path.display());
            if !rep.pass() {
                bail!("fig1 fixture failed orthogonality");
            }
        }
        "ex32" => {
            let spec = fixtures::hexagon_spec(args.p, args.q);
            let payload = zonotope_payload(ctx, &spec, 25)?;
            let shadow = project_zonotope(&spec.matrix_f64(), 2)?;
            let expected = fixtures::hexagon_vertices(args.p, args.q);
            let verts_ok = vertices_match(shadow.vertices(), &expected, 1e-10);
            let kb = integer_kernel(&spec)?;
            let db = density_bound(&spec, &kb)?;
            let exact = fixtures::hexagon_lattice_density(args.p, args.q);
            let density_ok = (db.lattice_density - exact).abs() <= 1e-10 * exact;
            let csv_path = ctx.output_dir.join("ex32_hexagon.csv");
            io::write_points_csv(&csv_path, shadow.vertices())?;
            let report = json!({
                "header": ctx.header(&[]),
                "p": args.p,
                "q": args.q,
                "result": payload,
                "expected_density": exact,
                "density_matches": density_ok,
                "hexagon_vertices_match": verts_ok,
                "hexagon_csv": csv_path.display().to_string(),
            });
            let path = ctx.write_report("ex32_report.json", report)?;
            println!("{}", path.display());
            if !(verts_ok && density_ok) {
                bail!("ex32 fixture mismatch (vertices {verts_ok}, density {density_ok})");
            }
        }
        "ex33" => {
            let spec = fixtures::quintic_spec();
            let payload = zonotope_payload(ctx, &spec, 27)?;
            let kb = integer_kernel(&spec)?;
            let kernel_ok = lattice_eq(&kb.rows, &fixtures::quintic_kernel_rows())?;
            let shadow = project_zonotope(&spec.matrix_f64(), 3)?;
            let expected = fixtures::quintic_shadow_vertices();
            let verts_ok = vertices_match(shadow.vertices(), &expected, 1e-10);
            let csv_path = ctx.output_dir.join("ex33_vertices.csv");
            io::write_points_csv(&csv_path, shadow.vertices())?;
            let report = json!({
                "header": ctx.header(&[]),
                "result": payload,
                "kernel_matches": kernel_ok,
                "vertices_match": verts_ok,
                "vertices_csv": csv_path.display().to_string(),
            });
            let path = ctx.write_report("ex33_report.json", report)?;
            println!("{}", path.display());
            if !(kernel_ok && verts_ok) {
                bail!("ex33 fixture mismatch (kernel {kernel_ok}, vertices {verts_ok})");
            }
        }
        other => bail!("unknown fixture {other}"),
    }
    Ok(())
}
