use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;
use shiftop_core::operators::isometry_sweep_with_grid;
use shiftop_core::process::GENERATOR;
use shiftop_core::{
    asymmetry_report, classify_roots, divergence_demo, ergodic_mean_check, invert_anticausal,
    invert_causal, reconstruct_innovations, simulate, InversionResult64,
    RootClassification64, Verdict, WienerElement64,
};

use crate::format::{human, machine, Num, Outputs};
use crate::{AnalysisConfig, CliError, Side, MAX_INVERSE_LEN};

#[derive(Debug, Clone, Serialize)]
pub struct CoeffJson {
    pub offset: i64,
    pub coeffs: Vec<[Num; 2]>,
}

impl From<&WienerElement64> for CoeffJson {
    fn from(f: &WienerElement64) -> Self {
        Self {
            offset: f.offset(),
            coeffs: f.coeffs().iter().map(|c| [Num(c.re), Num(c.im)]).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RootsJson {
    pub tol: Num,
    pub verdict: &'static str,
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
    /// Sorted by modulus, then argument.
    pub roots: Vec<[Num; 2]>,
}

impl From<&RootClassification64> for RootsJson {
    fn from(c: &RootClassification64) -> Self {
        let mut roots = c.roots.clone();
        roots.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then(a.arg().total_cmp(&b.arg())));
        Self {
            tol: Num(c.tol),
            verdict: c.verdict().as_str(),
            inside: c.inside,
            on_circle: c.on_circle,
            outside: c.outside,
            roots: roots.iter().map(|r| [Num(r.re), Num(r.im)]).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IsometryJson {
    #[serde(rename = "N")]
    pub dim: usize,
    pub norm: Num,
    pub gap: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymmetryJson {
    #[serde(rename = "N")]
    pub dim: usize,
    pub norm_circulant_inverse: Num,
    pub norm_triangular_inverse: Num,
    pub cond_circulant: Num,
    pub cond_triangular: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct InverseJson {
    pub side: &'static str,
    pub truncation_len: usize,
    pub tail_bound: Num,
    pub eps: Num,
    pub offset: i64,
    pub coeffs: Vec<[Num; 2]>,
}

impl InverseJson {
    fn new(r: &InversionResult64, eps: f64) -> Self {
        let c = CoeffJson::from(&r.inverse);
        Self {
            side: r.side.as_str(),
            truncation_len: r.truncation_len,
            tail_bound: Num(r.tail_bound),
            eps: Num(eps),
            offset: c.offset,
            coeffs: c.coeffs,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub transfer: CoeffJson,
    pub l1_norm: Num,
    pub grid_size: usize,
    /// Grid maximum of `|f|`, a lower bound on the sup norm.
    pub sup_norm: Num,
    /// Grid maximum plus the derivative-based grid error.
    pub sup_norm_upper: Num,
    pub roots: RootsJson,
    pub isometry: Vec<IsometryJson>,
    pub asymmetry: Vec<AsymmetryJson>,
    pub inverse: Option<InverseJson>,
    pub inverse_note: Option<String>,
}

#[derive(Debug)]
pub struct AnalyzeOutcome {
    pub report: AnalyzeReport,
    pub files: Vec<PathBuf>,
}

impl AnalyzeOutcome {
    pub fn summary(&self) -> Vec<String> {
        let r = &self.report;
        let mut lines = vec![
            format!(
                "verdict {} ({} inside, {} on, {} outside the unit circle)",
                r.roots.verdict, r.roots.inside, r.roots.on_circle, r.roots.outside
            ),
            format!("l1 norm {}  sup norm {}", human(r.l1_norm.0), human(r.sup_norm.0)),
        ];
        for row in &r.isometry {
            lines.push(format!(
                "N = {:>5}  |f(T_N)| = {}  gap = {}",
                row.dim,
                human(row.norm.0),
                human(row.gap.0)
            ));
        }
        for row in &r.asymmetry {
            lines.push(format!(
                "N = {:>5}  |f(B_N)^-1| = {}  |f(T_N)^-1| = {}",
                row.dim,
                human(row.norm_circulant_inverse.0),
                human(row.norm_triangular_inverse.0)
            ));
        }
        match (&r.inverse, &r.inverse_note) {
            (Some(inv), _) => lines.push(format!(
                "{} inverse: {} coefficients, tail bound {}",
                inv.side,
                inv.truncation_len,
                human(inv.tail_bound.0)
            )),
            (None, Some(note)) => lines.push(format!("no inverse: {note}")),
            _ => {}
        }
        lines.extend(self.files.iter().map(|p| format!("wrote {}", p.display())));
        lines
    }
}

fn csv_isometry(rows: &[IsometryJson]) -> String {
    let mut s = String::from("N,norm,gap\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{}", r.dim, machine(r.norm.0), machine(r.gap.0));
    }
    s
}

fn csv_asymmetry(rows: &[AsymmetryJson]) -> String {
    let mut s = String::from("N,norm_circulant_inverse,norm_triangular_inverse,cond_circulant,cond_triangular\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.dim,
            machine(r.norm_circulant_inverse.0),
            machine(r.norm_triangular_inverse.0),
            machine(r.cond_circulant.0),
            machine(r.cond_triangular.0)
        );
    }
    s
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Inverse on the side dictated by the root classification, or the reason
/// there is none.
fn natural_inverse(
    f: &WienerElement64,
    class: &RootClassification64,
    eps: f64,
) -> Result<InversionResult64, CliError> {
    match class.verdict() {
        Verdict::Invertible => Ok(invert_causal(f, MAX_INVERSE_LEN, eps)?),
        Verdict::Borderline => Err(CliError::Borderline(format!(
            "{} root(s) within {:e} of the unit circle",
            class.on_circle, class.tol
        ))),
        Verdict::NonInvertible if class.outside == 0 => Ok(invert_anticausal(f, MAX_INVERSE_LEN, eps)?),
        Verdict::NonInvertible => Err(CliError::Input(format!(
            "mixed roots ({} inside, {} outside the unit circle) have neither a causal nor an anticausal inverse",
            class.inside, class.outside
        ))),
    }
}

/// Root classification, norms, isometry sweep, asymmetry table and (when one
/// exists) the certified inverse. Writes `report.json`, `isometry.csv` and
/// `asymmetry.csv` to the output directory.
pub fn cmd_analyze(cfg: &AnalysisConfig) -> Result<AnalyzeOutcome, CliError> {
    let f = &cfg.transfer;
    let class = classify_roots(f, cfg.tol)?;
    let (sup, sup_upper) = f.sup_norm_bounds(cfg.grid_size)?;
    let isometry: Vec<IsometryJson> = isometry_sweep_with_grid(f, &cfg.dims, cfg.grid_size)?
        .into_iter()
        .map(|r| IsometryJson {
            dim: r.dim,
            norm: Num(r.norm),
            gap: Num(r.gap),
        })
        .collect();
    let inf = |x: Option<f64>| Num(x.unwrap_or(f64::INFINITY));
    let asymmetry: Vec<AsymmetryJson> = asymmetry_report(f, &cfg.dims)?
        .into_iter()
        .map(|r| AsymmetryJson {
            dim: r.dim,
            norm_circulant_inverse: inf(r.norm_circulant_inverse),
            norm_triangular_inverse: inf(r.norm_triangular_inverse),
            cond_circulant: inf(r.cond_circulant),
            cond_triangular: inf(r.cond_triangular),
        })
        .collect();
    let (inverse, inverse_note) = match natural_inverse(f, &class, cfg.eps) {
        Ok(r) => (Some(InverseJson::new(&r, cfg.eps)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let report = AnalyzeReport {
        transfer: f.into(),
        l1_norm: Num(f.l1_norm()),
        grid_size: cfg.grid_size,
        sup_norm: Num(sup),
        sup_norm_upper: Num(sup_upper),
        roots: (&class).into(),
        isometry,
        asymmetry,
        inverse,
        inverse_note,
    };
    let mut out = Outputs::default();
    out.add("report.json", to_json(&report));
    out.add("isometry.csv", csv_isometry(&report.isometry));
    out.add("asymmetry.csv", csv_asymmetry(&report.asymmetry));
    let files = out.commit(&cfg.output_dir)?;
    Ok(AnalyzeOutcome { report, files })
}

#[derive(Debug, Serialize)]
struct InverseFile {
    offset: i64,
    coeffs: Vec<[Num; 2]>,
    side: &'static str,
    truncation_len: usize,
    tail_bound: Num,
    eps: Num,
    source: CoeffJson,
}

#[derive(Debug)]
pub struct InvertOutcome {
    pub result: InversionResult64,
    pub files: Vec<PathBuf>,
}

impl InvertOutcome {
    pub fn summary(&self) -> Vec<String> {
        let r = &self.result;
        let mut lines = vec![format!(
            "{} inverse: {} coefficients from z^{} to z^{}, tail bound {}",
            r.side.as_str(),
            r.truncation_len,
            r.inverse.offset(),
            r.inverse.last_index(),
            human(r.tail_bound)
        )];
        lines.extend(self.files.iter().map(|p| format!("wrote {}", p.display())));
        lines
    }
}

/// Certified reciprocal of the transfer function, written to `inverse.json`
/// in the coefficient-file format with tail metadata.
pub fn cmd_invert(cfg: &AnalysisConfig) -> Result<InvertOutcome, CliError> {
    let f = &cfg.transfer;
    let result = match cfg.side {
        Side::Auto => {
            let class = classify_roots(f, cfg.tol)?;
            natural_inverse(f, &class, cfg.eps)?
        }
        Side::Causal => invert_causal(f, MAX_INVERSE_LEN, cfg.eps)?,
        Side::Anticausal => invert_anticausal(f, MAX_INVERSE_LEN, cfg.eps)?,
    };
    let coeffs = CoeffJson::from(&result.inverse);
    let file = InverseFile {
        offset: coeffs.offset,
        coeffs: coeffs.coeffs,
        side: result.side.as_str(),
        truncation_len: result.truncation_len,
        tail_bound: Num(result.tail_bound),
        eps: Num(cfg.eps),
        source: f.into(),
    };
    let mut out = Outputs::default();
    out.add("inverse.json", to_json(&file));
    let files = out.commit(&cfg.output_dir)?;
    Ok(InvertOutcome { result, files })
}

#[derive(Debug, Serialize)]
struct Metadata {
    seed: u64,
    generator: &'static str,
    sigma: Num,
    #[serde(rename = "T_len")]
    t_len: usize,
    max_lag: usize,
    transfer: CoeffJson,
    verdict: &'static str,
    analysis: &'static str,
    files: Vec<String>,
}

#[derive(Debug)]
pub struct SimulateOutcome {
    pub verdict: Verdict,
    /// `(M, MSE)` from the reconstruction or divergence table.
    pub mse: Vec<(usize, f64)>,
    pub max_lag: usize,
    pub files: Vec<PathBuf>,
}

impl SimulateOutcome {
    pub fn summary(&self) -> Vec<String> {
        let mut lines = vec![format!("verdict {}", self.verdict.as_str())];
        let label = match self.verdict {
            Verdict::Invertible => "reconstruction",
            _ => "divergence",
        };
        if let (Some(first), Some(last)) = (self.mse.first(), self.mse.last()) {
            lines.push(format!(
                "{label} MSE {} at M = {}, {} at M = {}",
                human(first.1),
                first.0,
                human(last.1),
                last.0
            ));
        }
        lines.extend(self.files.iter().map(|p| format!("wrote {}", p.display())));
        lines
    }
}

/// Seeded simulation of the MA process. Writes `sample.csv`, either
/// `reconstruction.csv` with `ar_coeffs.csv` (invertible transfer) or
/// `divergence.csv` (root inside the circle), `ergodicity.csv` and the
/// `metadata.json` sidecar.
///
/// The lag ladder is capped at `T_len − 1`.
pub fn cmd_simulate(cfg: &AnalysisConfig) -> Result<SimulateOutcome, CliError> {
    let f = &cfg.transfer;
    let sample = simulate(f, cfg.sigma, cfg.t_len, cfg.seed)?;
    let class = classify_roots(f, cfg.tol)?;
    let verdict = class.verdict();
    let max_lag = cfg.max_lag.min(cfg.t_len - 1);
    let mut out = Outputs::default();

    let mut s = String::from("t,X_t,eps_t\n");
    for (t, (x, e)) in sample.path.iter().zip(sample.aligned_innovations()).enumerate() {
        let _ = writeln!(s, "{t},{},{}", machine(*x), machine(*e));
    }
    out.add("sample.csv", s);

    let (analysis, mse) = match verdict {
        Verdict::Invertible => {
            let rep = reconstruct_innovations(&sample, max_lag)?;
            let mut s = String::from("M,mse\n");
            for &(m, v) in &rep.mse_per_cutoff {
                let _ = writeln!(s, "{m},{}", machine(v));
            }
            out.add("reconstruction.csv", s);
            let mut s = String::from("n,b_n\n");
            for (i, b) in rep.ar_coeffs.iter().enumerate() {
                let _ = writeln!(s, "{},{}", i + 1, machine(*b));
            }
            out.add("ar_coeffs.csv", s);
            ("reconstruction", rep.mse_per_cutoff)
        }
        Verdict::NonInvertible => {
            let rows = divergence_demo(&sample, max_lag)?;
            let mut s = String::from("M,mse,ratio\n");
            for (i, &(m, v)) in rows.iter().enumerate() {
                let ratio = if i == 0 { String::new() } else { machine(v / rows[i - 1].1) };
                let _ = writeln!(s, "{m},{},{ratio}", machine(v));
            }
            out.add("divergence.csv", s);
            ("divergence", rows)
        }
        Verdict::Borderline => ("skipped: unit root", Vec::new()),
    };

    let mut t_lens: Vec<usize> = [cfg.t_len / 100, cfg.t_len / 10, cfg.t_len]
        .into_iter()
        .filter(|&t| t > 0)
        .collect();
    t_lens.dedup();
    let rows = ergodic_mean_check(f, cfg.sigma, &t_lens, cfg.seed)?;
    let mut s = String::from("T_len,mean,abs_mean,predicted_std,studentized\n");
    for r in &rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.t_len,
            machine(r.mean),
            machine(r.abs_mean()),
            machine(r.predicted_std),
            machine(r.mean / r.predicted_std)
        );
    }
    out.add("ergodicity.csv", s);

    let mut names = out.names();
    names.push("metadata.json".into());
    let meta = Metadata {
        seed: cfg.seed,
        generator: GENERATOR,
        sigma: Num(cfg.sigma),
        t_len: cfg.t_len,
        max_lag,
        transfer: f.into(),
        verdict: verdict.as_str(),
        analysis,
        files: names,
    };
    out.add("metadata.json", to_json(&meta));
    let files = out.commit(&cfg.output_dir)?;
    Ok(SimulateOutcome {
        verdict,
        mse,
        max_lag,
        files,
    })
}
