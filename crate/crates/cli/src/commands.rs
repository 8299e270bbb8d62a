use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hypertrans_core::geometry::parse_rational;
use hypertrans_core::io::{
    gen_hadwiger, gen_product, gen_random_batch, parse_instance_file, random_points, render_svg, serialize_instance,
    MatroidTemplate, Meta, RandomParams, RenderSpec,
};
use hypertrans_core::topology::{build_k, reduced_betti_gf2};
use hypertrans_core::transversal::{enumerate_covectors, subfamily_of_cell};
use hypertrans_core::verifier::{audit, colorful_interpret};
use hypertrans_core::{check_star, lift_instance, verify_theorem, Instance, Limits, Point, StarCheck, VerificationResult};
use serde_json::{json, Value};

use crate::{Cli, Command, Format, GenCommon, GenKind, Global};

const EXIT_HYPOTHESIS: u8 = 3;
const EXIT_AUDIT: u8 = 5;

fn limits(g: &Global) -> Limits {
    Limits {
        max_family: g.max_family,
        max_vertices: g.max_vertices,
        ..Limits::default()
    }
}

fn load(path: &Path, limits: &Limits) -> Result<Instance> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let (inst, _) = parse_instance_file(&bytes, limits).with_context(|| format!("parsing {}", path.display()))?;
    Ok(inst)
}

fn emit(g: &Global, value: &Value, text: impl FnOnce() -> String) -> Result<()> {
    let out = match g.format {
        Format::Json => serde_json::to_string_pretty(value)?,
        Format::Text => text(),
    };
    println!("{out}");
    Ok(())
}

fn write_output(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, contents).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

pub fn run(cli: &Cli) -> Result<u8> {
    if let Some(jobs) = cli.global.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .context("configuring the thread pool")?;
    }
    let g = &cli.global;
    let lim = limits(g);
    match &cli.command {
        Command::Check { file } => check(g, &load(file, &lim)?, &lim),
        Command::Solve { file, colorful } => solve(g, &load(file, &lim)?, &lim, *colorful),
        Command::Audit { file } => run_audit(g, &load(file, &lim)?, &lim),
        Command::Cells { file } => cells(g, &load(file, &lim)?, &lim),
        Command::Homology { file, subfamily, degree } => homology(g, &load(file, &lim)?, &lim, subfamily.as_deref(), *degree),
        Command::Gen { kind } => generate(kind),
        Command::Render { file, witness, out } => {
            let inst = load(file, &lim)?;
            let hyperplane = if *witness {
                match verify_theorem(&inst, &lim)? {
                    VerificationResult::Witness(w) => Some(w.hyperplane),
                    other => bail!("no witness to draw: {}", serde_json::to_string(&other)?),
                }
            } else {
                None
            };
            let svg = render_svg(&inst, hyperplane.as_ref(), &RenderSpec::default())?;
            write_output(out.as_deref(), &svg)?;
            Ok(0)
        }
    }
}

fn check(g: &Global, inst: &Instance, lim: &Limits) -> Result<u8> {
    let result = check_star(inst, lim)?;
    emit(g, &serde_json::to_value(&result)?, || match &result {
        StarCheck::Pass { pairs_checked } => format!("hypothesis holds ({pairs_checked} pairs checked)"),
        StarCheck::Violation(v) => format!("hypothesis fails: G1 = {{{}}}, G2 = {{{}}}: {}", v.g1.join(", "), v.g2.join(", "), v.detail),
    })?;
    Ok(if result.passed() { 0 } else { EXIT_HYPOTHESIS })
}

fn solve(g: &Global, inst: &Instance, lim: &Limits, colorful: bool) -> Result<u8> {
    let result = verify_theorem(inst, lim)?;
    let mut value = serde_json::to_value(&result)?;
    let mut class_line = None;
    if let (true, Some(w)) = (colorful, result.witness()) {
        let class = colorful_interpret(inst, w)?;
        class_line = Some(format!("color class {} = {{{}}} lies in G", class.class, class.members.join(", ")));
        value["color_class"] = serde_json::to_value(&class)?;
    }
    emit(g, &value, || {
        let mut s = match &result {
            VerificationResult::Witness(w) => format!(
                "witness: G = {{{}}}, complement flat of rank {}, hyperplane {}·x = {}{}",
                w.g.join(", "),
                w.complement_flat.rank,
                w.hyperplane.normal,
                hypertrans_core::geometry::format_rational(&w.hyperplane.offset),
                if w.vacuous { " (vacuous)" } else { "" }
            ),
            VerificationResult::HypothesisFailed { violation } => {
                format!("hypothesis fails: {}", violation.detail)
            }
            VerificationResult::TheoremViolated { digest, flats_examined } => {
                format!("THEOREM VIOLATED on instance {digest} after {flats_examined} flats")
            }
        };
        if let Some(line) = &class_line {
            s.push('\n');
            s.push_str(line);
        }
        s
    })?;
    Ok(result.exit_code() as u8)
}

fn run_audit(g: &Global, inst: &Instance, lim: &Limits) -> Result<u8> {
    let report = audit(&lift_instance(inst)?, lim)?;
    emit(g, &serde_json::to_value(&report)?, || {
        let mut lines: Vec<String> = report
            .checks
            .iter()
            .map(|c| match &c.detail {
                None => format!("PASS {}", c.name),
                Some(d) => format!("FAIL {}: {d}", c.name),
            })
            .collect();
        lines.push(format!(
            "{} covectors, {} with low-rank subfamily; {}",
            report.covectors, report.low_rank_covectors, report.note
        ));
        lines.join("\n")
    })?;
    Ok(if report.passed() { 0 } else { EXIT_AUDIT })
}

fn cells(g: &Global, inst: &Instance, lim: &Limits) -> Result<u8> {
    let lifted = lift_instance(inst)?;
    let cells = enumerate_covectors(&lifted.pool, lifted.n(), lim)?;
    let rows = cells
        .covectors
        .iter()
        .map(|c| {
            Ok(json!({
                "signs": c.signs,
                "witness": c.witness,
                "dim": c.dim,
                "subfamily": lifted.ids_of(subfamily_of_cell(&cells, &c.signs, &lifted)?),
            }))
        })
        .collect::<Result<Vec<Value>>>()?;
    let value = json!({
        "n": cells.n,
        "pool_size": cells.pool.len(),
        "lineality": cells.lineality,
        "euler_characteristic": cells.euler_characteristic(),
        "covectors": rows,
    });
    emit(g, &value, || {
        let mut lines = vec![format!(
            "{} covectors on S^{}, Euler characteristic {}",
            cells.len(),
            cells.n - 1,
            cells.euler_characteristic()
        )];
        for r in &rows {
            lines.push(format!("{} dim {} witness {}", r["signs"].as_str().unwrap_or(""), r["dim"], r["witness"]));
        }
        lines.join("\n")
    })?;
    Ok(0)
}

fn homology(g: &Global, inst: &Instance, lim: &Limits, subfamily: Option<&[String]>, degree: Option<usize>) -> Result<u8> {
    let lifted = lift_instance(inst)?;
    let k = build_k(&lifted, lim)?;
    let complex = match subfamily {
        Some(ids) => k.induced_by_labels(ids)?,
        None => k,
    };
    let up_to = degree.unwrap_or(inst.k);
    let betti = reduced_betti_gf2(&complex, up_to, lim)?;
    let value = json!({
        "vertices": complex.vertices(),
        "faces": complex.face_count(),
        "reduced_betti_gf2": betti.0,
        "vanishing": betti.vanishes(),
    });
    emit(g, &value, || {
        format!(
            "{} vertices, {} faces, reduced GF(2) Betti numbers {:?} through degree {up_to}",
            complex.vertices().len(),
            complex.face_count(),
            betti.0
        )
    })?;
    Ok(0)
}

fn parse_template(spec: &str) -> Result<MatroidTemplate> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    Ok(match kind {
        "free" => MatroidTemplate::Free,
        "uniform" => MatroidTemplate::Uniform(arg.parse().context("uniform rank")?),
        "partition" => MatroidTemplate::Partition(
            arg.split(',')
                .map(|c| c.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .context("partition classes")?,
        ),
        other => bail!("unknown matroid template `{other}`; expected free, uniform:R or partition:C0,C1,..."),
    })
}

fn parse_points(spec: &str) -> Result<Vec<Point>> {
    spec.split(';')
        .map(|p| {
            let coords = if p.trim().is_empty() {
                Vec::new()
            } else {
                p.split(',')
                    .map(|c| parse_rational(c.trim()).map_err(|e| anyhow::anyhow!("point `{p}`: {e}")))
                    .collect::<Result<Vec<_>>>()?
            };
            Ok(Point::new(coords))
        })
        .collect()
}

fn finish(inst: &Instance, common: &GenCommon, generator: &str, description: String) -> Result<u8> {
    let meta = Meta {
        seed: Some(common.seed),
        generator: Some(generator.to_string()),
        description: Some(description),
    };
    write_output(common.out.as_deref(), &serialize_instance(inst, Some(meta))?)?;
    Ok(0)
}

fn generate(kind: &GenKind) -> Result<u8> {
    match kind {
        GenKind::Product { d, k, points, count, box_side, matroid, common } => {
            let pts = match points {
                Some(s) => parse_points(s)?,
                None => random_points(*count, *k, 2 * *count as i64, common.seed)?,
            };
            if pts.iter().any(|p| p.dim() != *k) {
                bail!("every point needs {k} coordinates");
            }
            let side = parse_rational(box_side).map_err(|e| anyhow::anyhow!("box side: {e}"))?;
            let inst = gen_product(&pts, *d, &side, &parse_template(matroid)?, common.seed)?;
            finish(&inst, common, "product", format!("{} fibers, box side {box_side}", pts.len()))
        }
        GenKind::Random { d, k, members, vertices, range, matroid, max_tries, common } => {
            let params = RandomParams {
                d: *d,
                k: *k,
                members: *members,
                max_vertices: *vertices,
                range: *range,
                matroid: parse_template(matroid)?,
            };
            let (found, stats) = gen_random_batch(&params, 1, common.seed, *max_tries)?;
            eprintln!("accepted {}/{} draws", stats.accepted, stats.tried);
            let Some(inst) = found.into_iter().next() else {
                bail!("no draw passed the hypothesis in {max_tries} tries");
            };
            finish(&inst, common, "random", format!("accepted after {} draws", stats.tried))
        }
        GenKind::Hadwiger { n, common } => {
            let inst = gen_hadwiger(*n, common.seed)?;
            finish(&inst, common, "hadwiger", format!("{n} polygons in 3 color classes"))
        }
    }
}
