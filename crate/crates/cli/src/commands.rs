use std::fmt::Write as _;

use anyhow::{bail, Context};
use serde::Serialize;

use dtensor::comalg::{FockVerifier, SweepReport};
use dtensor::config::OutputFormat;
use dtensor::fock::{FockSpace, OrbitalOrdering};
use dtensor::lieclass::diagram::RootDiagram;
use dtensor::lieclass::{self, FBasisPreset, NamedBasis, Preset};
use dtensor::radix::RadicalNumber;
use dtensor::tensor::{all_labels, build_double_tensor, TensorSet};
use dtensor::wigner::{self, HalfInt};
use dtensor::{CommutatorTable, DoubleTensorLabel, RunConfig, TensorConvention};

use crate::output::{emit, json};
use crate::{
    BasisArgs, Command, CommuteCmd, EmitArg, FBasisArg, OrderingArg, TensorCmd, VerifyArgs, WignerCmd, EXIT_MISMATCH,
};

pub fn dispatch(cfg: &RunConfig, command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Wigner { which } => wigner_cmd(cfg, which),
        Command::Tensor { which } => tensor_cmd(cfg, which),
        Command::Commute { which } => commute_cmd(cfg, which),
        Command::Verify(args) => verify_cmd(cfg, args),
        Command::Classify(args) => classify_cmd(cfg, args),
        Command::Roots { emit, basis } => roots_cmd(cfg, emit, basis),
        Command::Relations { f_basis } => relations_cmd(cfg, f_basis),
    }
}

fn exact_and_decimal(v: &RadicalNumber) -> String {
    match v.as_rational() {
        Some(r) if r.is_integer() => v.to_string(),
        _ => format!("{v} ≈ {:.5}", v.approx()),
    }
}

fn wigner_cmd(cfg: &RunConfig, which: WignerCmd) -> anyhow::Result<u8> {
    let (name, args, f): (&str, _, fn(_, _, _, _, _, _) -> _) = match which {
        WignerCmd::Cg { args } => ("cg", args, wigner::cg),
        WignerCmd::Sixj { args } => ("sixj", args, wigner::six_j),
        WignerCmd::W { args } => ("w", args, wigner::racah_w),
    };
    let v: Vec<HalfInt> = args
        .iter()
        .map(|a| {
            a.parse::<HalfInt>()
                .with_context(|| format!("argument `{a}` is not an integer or p/2 literal"))
        })
        .collect::<anyhow::Result<_>>()?;
    let value: RadicalNumber = f(v[0], v[1], v[2], v[3], v[4], v[5])?;
    let text = match cfg.format {
        OutputFormat::Text => format!("{}\n", exact_and_decimal(&value)),
        OutputFormat::Json => json(&serde_json::json!({
            "symbol": name,
            "args": args,
            "exact": value.to_string(),
            "approx": value.approx(),
        })),
    };
    emit(cfg, &text)?;
    Ok(0)
}

fn space(cfg: &RunConfig, ordering: OrbitalOrdering) -> anyhow::Result<FockSpace> {
    Ok(FockSpace::new(cfg.l, ordering)?)
}

#[derive(Serialize)]
struct OperatorJson {
    label: DoubleTensorLabel,
    convention: TensorConvention,
    dim: usize,
    nnz: usize,
    /// `[row, col, coeff]` with rows and columns as occupation bitmasks.
    entries: Vec<(u32, u32, String)>,
}

fn tensor_cmd(cfg: &RunConfig, which: TensorCmd) -> anyhow::Result<u8> {
    match which {
        TensorCmd::Build {
            sigma,
            k,
            pi,
            q,
            no_tilde,
        } => {
            let label = DoubleTensorLabel::new(sigma, k, pi, q);
            let conv = if no_tilde {
                TensorConvention::Plain
            } else {
                cfg.convention
            };
            let space = space(cfg, OrbitalOrdering::Standard)?;
            let op = build_double_tensor(&space, label, conv)?;
            let text = match cfg.format {
                OutputFormat::Text => {
                    format!(
                        "# {label} convention {conv} dim {} nnz {}\n{}",
                        op.dim(),
                        op.nnz(),
                        op.dump()
                    )
                }
                OutputFormat::Json => json(&OperatorJson {
                    label,
                    convention: conv,
                    dim: op.dim(),
                    nnz: op.nnz(),
                    entries: op.entries().map(|(r, c, v)| (r, c, v.to_string())).collect(),
                }),
            };
            emit(cfg, &text)?;
        }
        TensorCmd::List => {
            let labels = all_labels(cfg.s, cfg.l);
            let text = match cfg.format {
                OutputFormat::Text => labels.iter().map(|l| format!("{l}\n")).collect(),
                OutputFormat::Json => json(&labels),
            };
            emit(cfg, &text)?;
        }
    }
    Ok(0)
}

fn sigma0_odd_k(cfg: &RunConfig) -> Vec<DoubleTensorLabel> {
    all_labels(cfg.s, cfg.l)
        .into_iter()
        .filter(|l| l.sigma == HalfInt::ZERO && l.k.twice() % 4 == 2)
        .collect()
}

fn commute_cmd(cfg: &RunConfig, which: CommuteCmd) -> anyhow::Result<u8> {
    let (labels, oracle, single) = match which {
        CommuteCmd::Pair { a, b, oracle } => {
            a.validate(cfg.s, cfg.l)?;
            b.validate(cfg.s, cfg.l)?;
            (vec![a, b], oracle, true)
        }
        CommuteCmd::Table {
            sigma0_odd_k: true,
            oracle,
            ..
        } => (sigma0_odd_k(cfg), oracle, false),
        CommuteCmd::Table { oracle, .. } => (all_labels(cfg.s, cfg.l), oracle, false),
    };
    let set = if oracle {
        Some(TensorSet::new(space(cfg, OrbitalOrdering::Standard)?, cfg.convention)?)
    } else {
        None
    };
    let verifier = set
        .as_ref()
        .map(|s| FockVerifier::new(s, cfg.closed_form()))
        .transpose()?;
    let mut table = CommutatorTable::build(cfg, &labels, verifier.as_ref())?;
    if single {
        table.records.retain(|r| r.lhs == [labels[0], labels[1]]);
    }
    let text = match (cfg.format, single) {
        (OutputFormat::Json, _) => table.to_json(),
        (OutputFormat::Text, true) => {
            let r = &table.records[0];
            let mut s = format!("{}\n", r.rhs);
            if let Some(v) = &verifier {
                writeln!(s, "oracle: {}", v.oracle_commutator(labels[0], labels[1])?).unwrap();
                writeln!(s, "verdict: {}", r.oracle.as_ref().expect("oracle consulted")).unwrap();
            }
            s
        }
        (OutputFormat::Text, false) => table.to_text(),
    };
    emit(cfg, &text)?;
    let bad = table
        .records
        .iter()
        .any(|r| r.oracle.as_ref().is_some_and(|v| !v.is_equal()));
    Ok(if bad { EXIT_MISMATCH } else { 0 })
}

fn sweep_text(r: &SweepReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "convention {}  bracket {}  ordering {}",
        r.convention, r.bracket, r.ordering
    )
    .unwrap();
    writeln!(s, "pairs {}  nonzero {}", r.pairs, r.nonzero_pairs).unwrap();
    writeln!(
        s,
        "equal {}  ratio {}  mismatch {}  sector failures {}",
        r.equal, r.ratio, r.mismatch, r.sector_failures
    )
    .unwrap();
    if !r.ratios.is_empty() {
        writeln!(s, "ratios: {}", r.ratios.join(", ")).unwrap();
    }
    for e in &r.examples {
        writeln!(s, "  differs: {e}").unwrap();
    }
    writeln!(s, "overall: {}", r.overall).unwrap();
    s
}

fn verify_cmd(cfg: &RunConfig, args: VerifyArgs) -> anyhow::Result<u8> {
    let ordering = match args.ordering {
        OrderingArg::Standard => OrbitalOrdering::Standard,
        OrderingArg::Reversed => OrbitalOrdering::Reversed,
    };
    let set = TensorSet::new(space(cfg, ordering)?, cfg.convention)?;
    let verifier = FockVerifier::new(&set, cfg.closed_form())?;
    let report = match args.pair {
        Some(pair) => verifier.sweep(&pair[..1], &pair[1..])?,
        None => verifier.sweep(set.labels(), set.labels())?,
    };
    let text = match cfg.format {
        OutputFormat::Text => sweep_text(&report),
        OutputFormat::Json => json(&report),
    };
    emit(cfg, &text)?;
    Ok(if report.passed() { 0 } else { EXIT_MISMATCH })
}

fn load_basis(cfg: &RunConfig, args: &BasisArgs, default: Preset) -> anyhow::Result<NamedBasis> {
    let form = cfg.closed_form();
    match (&args.preset, &args.basis) {
        (_, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let basis = NamedBasis::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
            for p in &basis.elements {
                for l in p.labels() {
                    l.validate(cfg.s, cfg.l)?;
                }
            }
            Ok(basis)
        }
        (Some(name), None) => Ok(lieclass::preset(name.parse()?, &form)?),
        (None, None) => Ok(lieclass::preset(default, &form)?),
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    #[serde(rename = "type")]
    type_name: String,
    cartan_matrix: Vec<Vec<i64>>,
    dim: usize,
    rank: usize,
    roots: usize,
    closed: bool,
    killing_nondegenerate: bool,
    weyl_closed: bool,
    squared_lengths: Vec<RadicalNumber>,
    cartan: Vec<String>,
    killing_cartan: Vec<Vec<RadicalNumber>>,
}

fn classify_cmd(cfg: &RunConfig, args: BasisArgs) -> anyhow::Result<u8> {
    let basis = load_basis(cfg, &args, Preset::Sigma0OddK)?;
    if basis.is_empty() {
        bail!("the basis is empty");
    }
    let form = cfg.closed_form();
    let closure = lieclass::check_closure(&basis.elements, &form)?;
    if !closure.is_closed() {
        let mut s = String::from("not closed under commutation\n");
        for (x, y, residual) in &closure.residuals {
            writeln!(s, "[{}, {}] leaves {residual}", basis.names[*x], basis.names[*y]).unwrap();
        }
        emit(cfg, &s)?;
        return Ok(EXIT_MISMATCH);
    }
    let c = lieclass::classify(&basis.elements, &form)?;
    let kc = c.killing_cartan();
    let report = ClassifyReport {
        type_name: c.cartan_type.name.to_string(),
        cartan_matrix: c.cartan_type.cartan_matrix.clone(),
        dim: c.dim(),
        rank: c.rank(),
        roots: c.roots.len(),
        closed: true,
        killing_nondegenerate: c.killing_nondegenerate,
        weyl_closed: c.geometry.weyl_closed(),
        squared_lengths: c.geometry.squared_lengths(),
        cartan: c.cartan_coords.iter().map(|h| basis.describe(h)).collect(),
        killing_cartan: (0..kc.rows()).map(|i| kc.row(i).to_vec()).collect(),
    };
    let text = match cfg.format {
        OutputFormat::Json => json(&report),
        OutputFormat::Text => {
            let mut s = format!("{}\n", c.cartan_type);
            writeln!(s, "dim {}  rank {}  roots {}", report.dim, report.rank, report.roots).unwrap();
            writeln!(s, "killing form nondegenerate: {}", report.killing_nondegenerate).unwrap();
            let lens: Vec<String> = report.squared_lengths.iter().map(ToString::to_string).collect();
            writeln!(s, "squared root lengths: {}", lens.join(", ")).unwrap();
            if let [short, long] = report.squared_lengths.as_slice() {
                writeln!(s, "length ratio: {}", long.checked_div(short)?).unwrap();
            }
            writeln!(s, "weyl closed: {}", report.weyl_closed).unwrap();
            writeln!(s, "cartan: {}", report.cartan.join(", ")).unwrap();
            s
        }
    };
    emit(cfg, &text)?;
    Ok(0)
}

fn roots_cmd(cfg: &RunConfig, emit_as: EmitArg, args: BasisArgs) -> anyhow::Result<u8> {
    let basis = load_basis(cfg, &args, Preset::JfEigen)?;
    let c = lieclass::classify(&basis.elements, &cfg.closed_form())?;
    let diagram = RootDiagram::new(&c, &basis);
    let text = match emit_as {
        EmitArg::Text => diagram.to_text(),
        EmitArg::Svg => diagram.to_svg(),
        EmitArg::Json => {
            let mut s = diagram.to_json();
            s.push('\n');
            s
        }
    };
    emit(cfg, &text)?;
    Ok(0)
}

fn relations_cmd(cfg: &RunConfig, f_basis: FBasisArg) -> anyhow::Result<u8> {
    let form = cfg.closed_form();
    let preset = match f_basis {
        FBasisArg::Printed => FBasisPreset::Printed,
        FBasisArg::Eigen => FBasisPreset::Eigen,
    };
    let basis = lieclass::build_jf_basis(preset, &form)?;
    let checks = lieclass::check_relations(&basis, &form)?;
    let text = match cfg.format {
        OutputFormat::Json => json(&serde_json::json!({ "basis": basis.to_string(), "relations": checks })),
        OutputFormat::Text => {
            let mut s = basis.to_string();
            s.push('\n');
            for c in &checks {
                writeln!(s, "{c}").unwrap();
            }
            s
        }
    };
    emit(cfg, &text)?;
    Ok(if checks.iter().all(|c| c.holds) {
        0
    } else {
        EXIT_MISMATCH
    })
}
