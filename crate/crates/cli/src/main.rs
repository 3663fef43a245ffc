mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use skewsp::acceptance::{run_criterion, Mutations, CRITERIA};
use skewsp::exalg::{Context, SymplecticForm};
use skewsp::genus::{
    check_cstring, evaluate_surface_rr, genus_coefficients, genus_from_chern_numbers, ChernNumbers,
};
use skewsp::graphs::{
    check_graph_relations, highest_weight_check, parity_admissible, GraphActionConfig, GraphQuotient,
    QuotientOptions, DEFAULT_EXTRA_LEGS,
};
use skewsp::k3::{build_k3_table, check_232, supertrace};
use skewsp::pn::{p_map, quotient_graded_dims, realize_and_check_annihilation};
use skewsp::poly::Poly;
use skewsp::rational::{self, qr};
use skewsp::reps::{enumerate_decomposition, invariant_graded_dims, multiplicity, sp_irrep_dim, Weight};
use skewsp::spops::{
    check_commuting_actions, check_sp_relations_with, invariant_subspace, invariant_total_degree_dims, SpAction,
};

use report::{mark, poly_json, poly_text, q_str, var_names, Report};

#[derive(Parser)]
#[command(name = "skewsp", version, about = "Exact checks for skew-symmetric tensor algebras under Sp(V) x Sp(g)")]
struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit text (the default).
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Dims {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    g: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Y,
    OneMinusY,
}

#[derive(Subcommand)]
enum Command {
    /// Check the sp(g) relations on the full exterior basis.
    Relations {
        #[command(flatten)]
        dims: Dims,
        /// Also check that sp(V) and sp(g) commute.
        #[arg(long)]
        commuting: bool,
        /// Flip the sign of one entry of the symplectic form.
        #[arg(long)]
        flip_form_sign: bool,
    },
    /// List the (mu, mu~) pairs of the Sp(V) x Sp(g) decomposition.
    Decompose {
        #[command(flatten)]
        dims: Dims,
    },
    /// Sp(V)-invariants by multidegree.
    Invariants {
        #[command(flatten)]
        dims: Dims,
    },
    Pn {
        #[command(subcommand)]
        cmd: PnCommand,
    },
    Genus {
        #[command(subcommand)]
        cmd: GenusCommand,
    },
    K3 {
        #[command(subcommand)]
        cmd: K3Command,
    },
    Graphs {
        #[command(subcommand)]
        cmd: GraphsCommand,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u8>,
        #[arg(long)]
        flip_form_sign: bool,
        /// Use -1/4 for the same-index graph contraction.
        #[arg(long)]
        lambda_quarter: bool,
    },
}

#[derive(Subcommand)]
enum PnCommand {
    /// Symmetrized chord product of a word of 2k indices.
    Map {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        g: usize,
        #[arg(long, value_delimiter = ',')]
        word: Vec<usize>,
    },
    /// Check that the image of P_(n+1) acts as zero and P_n does not.
    Annihilate {
        #[command(flatten)]
        dims: Dims,
    },
    /// Graded quotient dimensions against graded invariant dimensions.
    Quotient {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GenusCommand {
    /// Genus coefficients as Chern-number combinations.
    Series {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value = "y")]
        basis: Basis,
    },
    /// Genus from given Chern numbers, e.g. --chern 2=24,1.1=0.
    Chern {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_delimiter = ',')]
        chern: Vec<String>,
        #[arg(long, value_enum, default_value = "y")]
        basis: Basis,
    },
    /// Check the (1-y) coefficients against products of Chern classes.
    Cstring {
        #[command(flatten)]
        dims: Dims,
    },
    /// Riemann-Roch value on a K3 surface for the m-th tensor power of the cotangent bundle.
    Surface {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum K3Command {
    /// Pluri-Hodge numbers, genus and supertrace.
    Table {
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum, default_value = "y")]
        basis: Basis,
    },
    /// Multiplicity of the trivial representation in H^1 at g = 3.
    #[command(name = "check-232")]
    Check232,
    /// Multiplicity of the Sp(g) irrep with highest weight a in H^q.
    Multiplicity {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        q: i64,
        #[arg(long, value_delimiter = ',')]
        a: Vec<i64>,
    },
}

#[derive(Subcommand)]
enum GraphsCommand {
    /// Dimension of the graph quotient at one internal degree.
    Rank {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        internal: usize,
        #[arg(long, default_value_t = DEFAULT_EXTRA_LEGS)]
        extra_legs: usize,
    },
    /// Check the sp(g) relations on quotient representatives.
    Relations {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda_quarter: bool,
    },
    /// Highest-weight data of the empty graph or the tripod.
    HighestWeight {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        internal: usize,
    },
    /// Whether the parity rule allows internal degree q with the given leg count.
    Parity {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        legs: usize,
    },
}

fn graph_config(quarter: bool) -> GraphActionConfig {
    let mut cfg = GraphActionConfig::default();
    if quarter {
        cfg.lambda_same = qr(-1, 4);
    }
    cfg
}

fn with_basis(p: &Poly, basis: Basis) -> skewsp::Result<Poly> {
    match basis {
        Basis::Y => Ok(p.clone()),
        Basis::OneMinusY => p.substitute_one_minus(&(0..p.nvars()).collect::<Vec<_>>()),
    }
}

fn basis_names(basis: Basis, g: usize) -> Vec<String> {
    match basis {
        Basis::Y => var_names("y", g),
        Basis::OneMinusY => var_names("y", g).into_iter().map(|v| format!("(1-{v})")).collect(),
    }
}

fn basis_label(basis: Basis) -> &'static str {
    match basis {
        Basis::Y => "y",
        Basis::OneMinusY => "one-minus-y",
    }
}

fn chern_key(k: &[usize]) -> String {
    if k.is_empty() {
        "1".into()
    } else {
        k.iter().map(|i| format!("c{i}")).collect::<Vec<_>>().join("*")
    }
}

fn parse_chern(items: &[String]) -> skewsp::Result<ChernNumbers> {
    let mut out = ChernNumbers::new();
    for item in items {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| skewsp::Error::Parse(format!("expected INDICES=VALUE, got {item}")))?;
        let mut idx: Vec<usize> = key
            .split('.')
            .map(|s| s.parse().map_err(|_| skewsp::Error::Parse(format!("bad index list {key}"))))
            .collect::<skewsp::Result<_>>()?;
        idx.sort_unstable_by(|a, b| b.cmp(a));
        out.insert(idx, rational::parse(value)?);
    }
    Ok(out)
}

fn relations(d: Dims, commuting: bool, flip: bool) -> skewsp::Result<Report> {
    let mut form = SymplecticForm::standard(d.n);
    if flip {
        form = form.with_flipped_entry(1, d.n + 1);
    }
    let action = SpAction::new(Context::new(d.n, d.g)?, form)?;
    let rel = check_sp_relations_with(&action)?;
    let com = if commuting {
        check_commuting_actions(&action)?
    } else {
        Vec::new()
    };
    let failed: Vec<&str> = rel
        .iter()
        .chain(&com)
        .filter(|r| !r.residual_norm_zero)
        .map(|r| r.relation.as_str())
        .collect();
    let ok = failed.is_empty();
    let mut text = format!(
        "n={} g={}: {} relations, {} commutators checked on {} basis elements\n",
        d.n,
        d.g,
        rel.len(),
        com.len(),
        1u128 << (2 * d.n * d.g)
    );
    if ok {
        text.push_str("all residuals zero");
    } else {
        text.push_str(&format!("{} nonzero residuals:", failed.len()));
        for f in &failed {
            text.push_str(&format!("\n  {f}"));
        }
    }
    Ok(Report::new(
        json!({"n": d.n, "g": d.g, "relations": rel, "commuting": com, "passed": ok}),
        text,
        ok,
    ))
}

fn decompose(d: Dims) -> skewsp::Result<Report> {
    let entries = enumerate_decomposition(d.n, d.g)?;
    let total: u128 = entries.iter().map(|e| e.dim_spv as u128 * e.dim_spg as u128).sum();
    let expected = 1u128 << (2 * d.n * d.g);
    let ok = total == expected;
    let mut text = format!("{:<16} {:<16} {:>10} {:>10}\n", "mu", "mu~", "dim Sp(V)", "dim Sp(g)");
    for e in &entries {
        text.push_str(&format!(
            "{:<16} {:<16} {:>10} {:>10}\n",
            format!("{:?}", e.mu),
            format!("{:?}", e.mu_tilde),
            e.dim_spv,
            e.dim_spg
        ));
    }
    text.push_str(&format!("total {total}, expected {expected} [{}]", mark(ok)));
    Ok(Report::new(
        json!({"n": d.n, "g": d.g, "entries": entries, "total": total.to_string(),
               "expected": expected.to_string(), "passed": ok}),
        text,
        ok,
    ))
}

fn invariants(d: Dims) -> skewsp::Result<Report> {
    let blocks = invariant_subspace(d.n, d.g)?;
    let by_total = invariant_total_degree_dims(&blocks);
    let predicted = invariant_graded_dims(d.n, d.g, 2 * d.n * d.g);
    let total: usize = blocks.iter().map(|b| b.dim()).sum();
    let expected = sp_irrep_dim(d.g, &Weight::constant(d.g, d.n as i64))?;
    let graded_ok = predicted
        .iter()
        .all(|(deg, v)| *v == by_total.get(deg).copied().unwrap_or(0).into());
    let ok = graded_ok && expected == total.into();
    let mut text = String::new();
    for b in &blocks {
        text.push_str(&format!("degree {:?}: {}\n", b.degree.degrees, b.dim()));
    }
    text.push_str(&format!(
        "total {total}, dim R(n,...,n) = {expected}, graded dims match: {} [{}]",
        graded_ok,
        mark(ok)
    ));
    let block_json: Vec<_> = blocks
        .iter()
        .map(|b| {
            let basis: Vec<_> = b.basis.iter().map(|x| x.to_json()).collect();
            json!({"degree": b.degree.degrees, "dim": b.dim(), "basis": basis})
        })
        .collect();
    Ok(Report::new(
        json!({"n": d.n, "g": d.g, "blocks": block_json, "total": total,
               "expected": expected.to_string(), "passed": ok}),
        text,
        ok,
    ))
}

fn pn(cmd: PnCommand) -> skewsp::Result<Report> {
    match cmd {
        PnCommand::Map { k, g, word } => {
            if word.len() != 2 * k {
                return Err(skewsp::Error::Parse(format!("word needs {} letters, got {}", 2 * k, word.len())));
            }
            let p = p_map(k, &word, g)?;
            let text = p
                .terms
                .iter()
                .map(|(m, c)| {
                    let mono: Vec<String> = m.0.iter().map(|(i, j)| format!("L{i}{j}")).collect();
                    format!("{} {}", q_str(c), mono.join(" "))
                })
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Report::new(json!({"k": k, "g": g, "word": word, "terms": p.to_json()}), text, true))
        }
        PnCommand::Annihilate { dims } => {
            let r = realize_and_check_annihilation(dims.n, dims.g)?;
            let ok = r.annihilates && r.lower_witness.is_some();
            let text = format!(
                "P_{} annihilates: {} ({} words); P_{} witness: {:?} [{}]",
                dims.n + 1,
                r.annihilates,
                r.words_checked,
                dims.n,
                r.lower_witness,
                mark(ok)
            );
            Ok(Report::new(json!({"report": r, "passed": ok}), text, ok))
        }
        PnCommand::Quotient { dims, max_degree } => {
            let top = max_degree.unwrap_or(dims.n * dims.g + 1);
            let entries = quotient_graded_dims(dims.n, dims.g, top)?;
            let inv = invariant_graded_dims(dims.n, dims.g, 2 * top);
            let mut ok = true;
            let mut text = format!("{:>6} {:>8} {:>6} {:>8} {:>10}\n", "degree", "ambient", "rank", "quotient", "invariant");
            let mut rows = Vec::new();
            for e in &entries {
                let want = inv.get(&(2 * e.degree)).cloned().unwrap_or_default();
                ok &= want == e.quotient.into();
                text.push_str(&format!(
                    "{:>6} {:>8} {:>6} {:>8} {:>10}\n",
                    e.degree, e.ambient, e.rank, e.quotient, want
                ));
                rows.push(json!({"entry": e, "invariant": want.to_string()}));
            }
            text.push_str(&format!("[{}]", mark(ok)));
            Ok(Report::new(json!({"n": dims.n, "g": dims.g, "degrees": rows, "passed": ok}), text, ok))
        }
    }
}

fn genus(cmd: GenusCommand) -> skewsp::Result<Report> {
    match cmd {
        GenusCommand::Series { dims, basis } => {
            // Collect each Chern monomial's coefficient polynomial in t = 1 - y.
            let mut per_key: BTreeMap<Vec<usize>, Poly> = BTreeMap::new();
            for (k, v) in genus_coefficients(dims.n, dims.g)? {
                for (key, c) in v.terms {
                    per_key
                        .entry(key)
                        .or_insert_with(|| Poly::zero(dims.g))
                        .add_term(k.clone(), c);
                }
            }
            let names = basis_names(basis, dims.g);
            let mut text = String::new();
            let mut out = serde_json::Map::new();
            for (key, t_poly) in per_key {
                let p = match basis {
                    Basis::Y => t_poly.substitute_one_minus(&(0..dims.g).collect::<Vec<_>>())?,
                    Basis::OneMinusY => t_poly,
                };
                text.push_str(&format!("{}: {}\n", chern_key(&key), poly_text(&p, &names)));
                out.insert(chern_key(&key), poly_json(&p));
            }
            Ok(Report::new(
                json!({"n": dims.n, "g": dims.g, "basis": basis_label(basis), "coefficients": out}),
                text.trim_end().to_string(),
                true,
            ))
        }
        GenusCommand::Chern { dims, chern, basis } => {
            let numbers = parse_chern(&chern)?;
            let p = with_basis(&genus_from_chern_numbers(dims.n, dims.g, &numbers)?, basis)?;
            Ok(Report::new(
                json!({"n": dims.n, "g": dims.g, "basis": basis_label(basis), "genus": poly_json(&p)}),
                poly_text(&p, &basis_names(basis, dims.g)),
                true,
            ))
        }
        GenusCommand::Cstring { dims } => {
            let checks = check_cstring(dims.n, dims.g)?;
            let ok = checks.iter().all(|c| c.matches);
            let mut text = String::new();
            for c in &checks {
                text.push_str(&format!("q={:?}: {} [{}]\n", c.q, c.coefficient, mark(c.matches)));
            }
            Ok(Report::new(
                json!({"n": dims.n, "g": dims.g, "checks": checks, "passed": ok}),
                text.trim_end().to_string(),
                ok,
            ))
        }
        GenusCommand::Surface { m } => {
            let v = evaluate_surface_rr(m)?;
            Ok(Report::new(json!({"m": m, "value": v.to_string()}), v.to_string(), true))
        }
    }
}

fn k3(cmd: K3Command) -> skewsp::Result<Report> {
    match cmd {
        K3Command::Table { g, basis } => {
            let t = build_k3_table(g)?;
            let st = supertrace(&t);
            let genus = st.shift(&vec![1; g]);
            let shown = with_basis(&genus, basis)?;
            let mut text = String::new();
            for qd in 0..=t.max_q() {
                text.push_str(&format!("q={qd}\n"));
                let mut entries: Vec<(&Vec<usize>, i64)> =
                    t.entries().filter(|(_, tq, _)| *tq == qd).map(|(p, _, h)| (p, h)).collect();
                entries.sort();
                for (p, h) in entries {
                    let label = p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                    text.push_str(&format!("  p=({label:<w$}) {h:>12}\n", w = 2 * g - 1));
                }
            }
            text.push_str(&format!("genus: {}", poly_text(&shown, &basis_names(basis, g))));
            Ok(Report::new(
                json!({"g": g, "entries": t.to_json(), "basis": basis_label(basis),
                       "genus": poly_json(&shown), "supertrace": poly_json(&st)}),
                text,
                true,
            ))
        }
        K3Command::Check232 => {
            let c = check_232()?;
            let text = format!(
                "{}\nh^((1,1,1),1) = {}, h^((1),1) = {}, difference {} [{}]",
                c.multiplicity,
                c.h_111,
                c.h_1,
                c.difference,
                mark(c.passed)
            );
            let ok = c.passed;
            Ok(Report::new(json!(c), text, ok))
        }
        K3Command::Multiplicity { g, q, a } => {
            let t = build_k3_table(g)?;
            let m = multiplicity(&t, q, &Weight(a.clone()), 1, g)?;
            Ok(Report::new(json!({"g": g, "q": q, "a": a, "m": m}), m.to_string(), true))
        }
    }
}

fn graphs(cmd: GraphsCommand) -> skewsp::Result<Report> {
    match cmd {
        GraphsCommand::Rank {
            g,
            n,
            internal,
            extra_legs,
        } => {
            let opts = QuotientOptions {
                extra_legs,
                ..Default::default()
            };
            let qt = GraphQuotient::build(g, n, internal, &opts)?;
            let dims: BTreeMap<String, usize> = qt
                .profile_dims()
                .into_iter()
                .filter(|(_, d)| *d > 0)
                .map(|(p, d)| (format!("{p:?}"), d))
                .collect();
            let rank = qt.rank();
            Ok(Report::new(
                json!({"g": g, "n": n, "internal": internal, "max_legs": qt.max_legs(),
                       "rank": rank, "profiles": dims}),
                rank.to_string(),
                true,
            ))
        }
        GraphsCommand::Relations { g, n, lambda_quarter } => {
            let report = check_graph_relations(g, n, &graph_config(lambda_quarter))?;
            let failed: Vec<&str> = report
                .iter()
                .filter(|r| !r.residual_norm_zero)
                .map(|r| r.relation.as_str())
                .collect();
            let ok = failed.is_empty();
            let mut text = format!("{} relations checked on graph quotient representatives", report.len());
            if ok {
                text.push_str("\nall hold");
            }
            for f in &failed {
                text.push_str(&format!("\n  fails: {f}"));
            }
            Ok(Report::new(json!({"g": g, "n": n, "relations": report, "passed": ok}), text, ok))
        }
        GraphsCommand::HighestWeight { g, n, internal } => {
            let r = highest_weight_check(g, n, internal, &GraphActionConfig::default())?;
            let text = format!(
                "{}: weight {:?}, expected {:?} [{}]",
                r.vector,
                r.weight,
                r.expected,
                mark(r.passed)
            );
            let ok = r.passed;
            Ok(Report::new(json!(r), text, ok))
        }
        GraphsCommand::Parity { q, legs } => {
            let a = parity_admissible(q, legs);
            Ok(Report::new(json!({"q": q, "legs": legs, "admissible": a}), a.to_string(), true))
        }
    }
}

fn selftest(criteria: Vec<u8>, m: Mutations) -> skewsp::Result<Report> {
    let ids: Vec<u8> = if criteria.is_empty() {
        CRITERIA.iter().map(|(id, _)| *id).collect()
    } else {
        criteria
    };
    if let Some(bad) = ids.iter().find(|id| !CRITERIA.iter().any(|(c, _)| c == *id)) {
        return Err(skewsp::Error::IndexOutOfRange(format!("no criterion {bad}")));
    }
    let results: Vec<_> = ids.iter().map(|&id| run_criterion(id, &m)).collect();
    let ok = results.iter().all(|r| r.passed);
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!(
            "criterion {} [{}] {}: {}\n",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        ));
    }
    let passed = results.iter().filter(|r| r.passed).count();
    text.push_str(&format!("{passed}/{} passed", results.len()));
    Ok(Report::new(
        json!({"mutations": m, "criteria": results, "passed": ok}),
        text,
        ok,
    ))
}

fn dispatch(cmd: Command) -> skewsp::Result<Report> {
    match cmd {
        Command::Relations {
            dims,
            commuting,
            flip_form_sign,
        } => relations(dims, commuting, flip_form_sign),
        Command::Decompose { dims } => decompose(dims),
        Command::Invariants { dims } => invariants(dims),
        Command::Pn { cmd } => pn(cmd),
        Command::Genus { cmd } => genus(cmd),
        Command::K3 { cmd } => k3(cmd),
        Command::Graphs { cmd } => graphs(cmd),
        Command::Selftest {
            criterion,
            flip_form_sign,
            lambda_quarter,
        } => selftest(
            criterion,
            Mutations {
                flip_form_sign,
                lambda_same_quarter: lambda_quarter,
            },
        ),
    }
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("SKEWSP_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| format!("SKEWSP_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("SKEWSP_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match dispatch(cli.command) {
        Ok(r) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&r.json).expect("report serializes")
            } else {
                r.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

