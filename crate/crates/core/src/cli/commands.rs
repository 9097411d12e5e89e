use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::Error;
use crate::fractional::{fourier_pieces, frac_section};
use crate::geometry::{
    hausdorff_and_l2, load_body, mollify, radial_metric, sphere_grid, BodyFile, Direction, SphereQuadrature, StarBody,
};
use crate::harmonics::{expand, expand_values, lambda_eigenvalue};
use crate::sections::{cross_section_body, intersection_body, profile_at, section_profile, SliceRule};
use crate::stability::{
    geometric_params, keylemma_bound, sweep_main1, sweep_main2, verify_cor1, verify_lemma_intparallel, verify_main1,
    verify_main2, verify_mmo_forward, write_reports, Family, GateStatus, StabilityReport, Sweep, Verdict,
};

use super::{Check, Cli, Command, Failure, Opts};

type Res<T> = std::result::Result<T, Failure>;

fn f17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Output buffer written once at the end.
struct Output {
    text: String,
}

impl Output {
    fn new(cli: &Cli) -> Self {
        let o = &cli.opts;
        let name = match &cli.command {
            Command::Section { .. } => "section",
            Command::Verify { .. } => "verify",
            Command::Fracderiv => "fracderiv",
            Command::Harmonics => "harmonics",
            Command::Ibody { .. } => "ibody",
            Command::Cbody => "cbody",
            Command::Metric => "metric",
        };
        let mut out = Output { text: String::new() };
        out.echo("command", name);
        out.echo("version", env!("CARGO_PKG_VERSION"));
        let path = |p: &Option<std::path::PathBuf>| p.as_ref().map(|p| p.display().to_string());
        for (k, v) in [
            ("body", path(&o.body)),
            ("body2", path(&o.body2)),
            ("xi", o.xi.clone()),
            ("t", o.t.clone()),
            ("p", o.p.clone()),
            ("delta", o.delta.map(|d| d.to_string())),
            ("sweep", o.sweep.clone()),
        ] {
            if let Some(v) = v {
                out.echo(k, &v);
            }
        }
        out.echo("grid_order", &o.grid_order.to_string());
        out.echo("max_degree", &o.max_degree.to_string());
        out.echo("dim", &o.dim.to_string());
        out.echo("seed", &o.seed.to_string());
        if let Command::Verify { check } = &cli.command {
            out.echo("check", &format!("{check:?}").to_lowercase());
        }
        out
    }

    fn echo(&mut self, k: &str, v: &str) {
        let _ = writeln!(self.text, "# {k}={v}");
    }

    fn line(&mut self, s: &str) {
        self.text.push_str(s);
        self.text.push('\n');
    }

    fn finish(self, opts: &Opts) -> Res<()> {
        match &opts.out {
            Some(p) => fs::write(p, self.text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display()))),
            None => {
                use std::io::Write;
                // A closed pipe downstream is not an error of ours.
                let _ = std::io::stdout().lock().write_all(self.text.as_bytes());
                Ok(())
            }
        }
    }
}

fn parse_list(s: &str, what: &str) -> Res<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| Failure::Input(format!("cannot parse {what} value '{x}'"))))
        .collect()
}

fn load(path: &Path, delta: Option<f64>) -> Res<StarBody> {
    if !path.exists() {
        return Err(Failure::Input(format!("body file {} not found", path.display())));
    }
    let b = load_body(path)?;
    Ok(match delta {
        Some(d) => mollify(&b, d)?,
        None => b,
    })
}

fn body(opts: &Opts) -> Res<StarBody> {
    let p = opts.body.as_ref().ok_or_else(|| Failure::Input("--body is required".into()))?;
    load(p, opts.delta)
}

fn body2(opts: &Opts) -> Res<StarBody> {
    let p = opts.body2.as_ref().ok_or_else(|| Failure::Input("--body2 is required".into()))?;
    load(p, opts.delta)
}

fn direction(opts: &Opts, n: usize) -> Res<Vec<f64>> {
    match &opts.xi {
        None => Ok(Direction::axis(n, n - 1).into_vec()),
        Some(s) => {
            let v = parse_list(s, "xi")?;
            if v.len() != n {
                return Err(Error::DimError { expected: n, got: v.len() }.into());
            }
            Ok(Direction::normalized(v)?.into_vec())
        }
    }
}

fn orders(opts: &Opts) -> Res<Vec<f64>> {
    parse_list(opts.p.as_deref().unwrap_or("0.5"), "p")
}

fn grid(opts: &Opts, n: usize) -> Res<SphereQuadrature> {
    Ok(sphere_grid(n, opts.grid_order)?)
}

pub fn execute(cli: &Cli) -> Res<()> {
    let mut out = Output::new(cli);
    let opts = &cli.opts;
    let outcome = match &cli.command {
        Command::Section { count } => section(opts, *count, &mut out),
        Command::Verify { check } => verify(opts, *check, &mut out),
        Command::Fracderiv => fracderiv(opts, &mut out),
        Command::Harmonics => harmonics(opts, &mut out),
        Command::Ibody { series } => ibody(opts, series.as_deref(), &mut out),
        Command::Cbody => cbody(opts, &mut out),
        Command::Metric => metric(opts, &mut out),
    };
    match outcome {
        Ok(()) => out.finish(opts),
        Err(Failure::Violated(m)) => {
            out.finish(opts)?;
            Err(Failure::Violated(m))
        }
        Err(e) => Err(e),
    }
}

fn section(opts: &Opts, count: usize, out: &mut Output) -> Res<()> {
    let k = body(opts)?;
    let xi = direction(opts, k.dim())?;
    let rule = SliceRule::default_for(&k);
    let prof = match &opts.t {
        Some(ts) => profile_at(&k, &xi, &parse_list(ts, "t")?, &rule)?,
        None => section_profile(&k, &xi, count, &rule)?,
    };
    let mut buf = Vec::new();
    prof.write_csv(&mut buf).map_err(|e| Failure::Input(e.to_string()))?;
    out.text.push_str(&String::from_utf8_lossy(&buf));
    Ok(())
}

fn fracderiv(opts: &Opts, out: &mut Output) -> Res<()> {
    let k = body(opts)?;
    let n = k.dim();
    let xi = direction(opts, n)?;
    let quad = grid(opts, n)?;
    let rule = SliceRule::default_for(&k);
    out.line("p,direct,direct_error,fourier,fourier_imag_residual");
    for p in orders(opts)? {
        let d = frac_section(&k, &xi, p, &rule)?;
        let f = fourier_pieces(&k, p, &quad, opts.max_degree)?.at(&xi);
        out.line(&format!("{},{},{},{},{}", f17(p), f17(d.value), f17(d.error), f17(f.value), f17(f.imag_residual)));
    }
    Ok(())
}

fn harmonics(opts: &Opts, out: &mut Output) -> Res<()> {
    match &opts.body {
        Some(_) => {
            let k = body(opts)?;
            let quad = grid(opts, k.dim())?;
            let e = expand(|x| k.radial_at(x), &quad, opts.max_degree)?;
            out.echo("residual", &f17(e.residual));
            let mut buf = Vec::new();
            e.write_csv(&mut buf).map_err(|e| Failure::Input(e.to_string()))?;
            out.text.push_str(&String::from_utf8_lossy(&buf));
        }
        None => {
            out.line("n,p,m,lambda_real,lambda_imag");
            for p in orders(opts)? {
                for m in 0..=opts.max_degree {
                    let l = lambda_eigenvalue(opts.dim, p, m)?;
                    out.line(&format!("{},{},{m},{},{}", opts.dim, f17(p), f17(l.re), f17(l.im)));
                }
            }
        }
    }
    Ok(())
}

fn node_header(n: usize) -> String {
    (0..n).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",")
}

fn node_cells(x: &[f64]) -> String {
    x.iter().map(|c| f17(*c)).collect::<Vec<_>>().join(",")
}

fn ibody(opts: &Opts, series: Option<&Path>, out: &mut Output) -> Res<()> {
    let k = body(opts)?;
    let quad = grid(opts, k.dim())?;
    let table = intersection_body(&k, &quad)?;
    if let Some(path) = series {
        let e = expand_values(&table.values, &quad, opts.max_degree)?;
        out.echo("series_residual", &f17(e.residual));
        let text = BodyFile::from_spec(&e.to_radial_series(0.0)).to_toml();
        fs::write(path, text).map_err(|err| Failure::Input(format!("cannot write {}: {err}", path.display())))?;
        out.echo("series", &path.display().to_string());
    }
    out.line(&format!("{},weight,rho", node_header(k.dim())));
    for (i, v) in table.values.iter().enumerate() {
        out.line(&format!("{},{},{}", node_cells(quad.node(i)), f17(quad.weights()[i]), f17(*v)));
    }
    Ok(())
}

fn cbody(opts: &Opts, out: &mut Output) -> Res<()> {
    let k = body(opts)?;
    let quad = grid(opts, k.dim())?;
    let table = cross_section_body(&k, &quad)?;
    let ts = table.t_star.clone().unwrap_or_default();
    out.line(&format!("{},weight,rho,t_star", node_header(k.dim())));
    for (i, v) in table.values.iter().enumerate() {
        out.line(&format!("{},{},{},{}", node_cells(quad.node(i)), f17(quad.weights()[i]), f17(*v), f17(ts[i])));
    }
    Ok(())
}

fn metric(opts: &Opts, out: &mut Output) -> Res<()> {
    let k = body(opts)?;
    let l = match &opts.body2 {
        Some(_) => body2(opts)?,
        None => {
            out.echo("body2", "reflection of body");
            k.reflect()
        }
    };
    let quad = grid(opts, k.dim())?;
    let rd = radial_metric(&k, &l, &quad)?;
    out.line("quantity,value");
    out.line(&format!("radial,{}", f17(rd.value)));
    for (i, c) in rd.argmax.iter().enumerate() {
        out.line(&format!("argmax_{i},{}", f17(*c)));
    }
    if k.is_convex() && l.is_convex() {
        let s = hausdorff_and_l2(&k, &l, &quad)?;
        out.line(&format!("support_sup,{}", f17(s.delta_inf)));
        out.line(&format!("support_l2,{}", f17(s.delta_2)));
    }
    Ok(())
}

fn parse_sweep(spec: &str, opts: &Opts) -> Res<(Family, Vec<f64>)> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 {
        return Err(Failure::Input(format!("sweep '{spec}' is not name:lo:hi:count")));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|_| Failure::Input(format!("bad sweep bound '{s}'")));
    let (lo, hi) = (num(parts[1])?, num(parts[2])?);
    let count: usize = parts[3].parse().map_err(|_| Failure::Input(format!("bad sweep count '{}'", parts[3])))?;
    if !(lo > 0.0 && hi > lo) || count < 2 {
        return Err(Failure::Input("sweep needs 0 < lo < hi and count >= 2".into()));
    }
    let n = opts.dim;
    let family = match parts[0] {
        "shifted_ball" => Family::ShiftedBall { dim: n },
        "shifted_ellipsoid" => Family::ShiftedEllipsoid { semi_axes: (0..n).map(|i| [1.0, 1.2, 0.8, 1.1][i % 4]).collect() },
        "mollified_cube" => Family::MollifiedShiftedCube { dim: n, delta: opts.delta.unwrap_or(0.05) },
        "dilate" => Family::Dilate { dim: n },
        "ellipsoid_stretch" => Family::EllipsoidStretch { dim: n },
        other => return Err(Failure::Input(format!("unknown sweep family '{other}'"))),
    };
    Ok((family, geometric_params(lo, hi, count)))
}

fn warn_gates(reports: &[StabilityReport], out: &mut Output) {
    for r in reports {
        if r.gate == GateStatus::NotMet {
            let msg = format!("{} gate not met (eps={} >= {})", r.theorem.tag(), f17(r.epsilon), f17(r.gate_limit.unwrap_or(f64::NAN)));
            eprintln!("warning: {msg}");
            out.echo("warning", &msg);
        }
    }
}

fn emit_reports(reports: &[StabilityReport], out: &mut Output) -> Res<()> {
    warn_gates(reports, out);
    let mut buf = Vec::new();
    write_reports(reports, &mut buf).map_err(|e| Failure::Input(e.to_string()))?;
    out.text.push_str(&String::from_utf8_lossy(&buf));
    match reports.iter().find(|r| r.verdict == Verdict::Violated) {
        Some(r) => Err(Failure::Violated(format!("{} bound failed: distance {} > bound {:?}", r.theorem.tag(), r.distance, r.bound))),
        None => Ok(()),
    }
}

fn emit_sweep(sw: Sweep, out: &mut Output) -> Res<()> {
    out.echo("fit_slope", &f17(sw.fit.slope));
    out.echo("fit_residual", &f17(sw.fit.residual));
    out.echo("fit_decades", &f17(sw.fit.decades));
    out.echo("ratio_cap", &f17(sw.ratio_cap));
    out.echo("sweep_verdict", &sw.verdict.to_string());
    emit_reports(&sw.reports, out)
}

fn verify(opts: &Opts, check: Check, out: &mut Output) -> Res<()> {
    let p = orders(opts)?[0];
    if let Some(spec) = &opts.sweep {
        let (family, params) = parse_sweep(spec, opts)?;
        let quad = grid(opts, family.dim())?;
        let sw = match check {
            Check::Main1 => sweep_main1(&family, &params, &quad)?,
            Check::Main2 => sweep_main2(&family, &params, p, &quad)?,
            _ => return Err(Failure::Input("sweeps support --check main1 and main2".into())),
        };
        return emit_sweep(sw, out);
    }
    let k = body(opts)?;
    let quad = grid(opts, k.dim())?;
    let rep = match check {
        Check::Mmo => verify_mmo_forward(&k, &quad)?,
        Check::Main1 => verify_main1(&k, &quad)?,
        Check::Cor1 => verify_cor1(&k, &quad)?,
        Check::Intparallel => verify_lemma_intparallel(&k, &quad)?,
        Check::Main2 => verify_main2(&k, &body2(opts)?, p, &quad)?,
        Check::Keylemma => keylemma_bound(&k, &body2(opts)?, p, &quad, opts.max_degree)?,
    };
    emit_reports(&[rep], out)
}
