//! `fanok`: numerical K-theory of Picard-rank-1 Fano threefolds from the
//! command line. Every subcommand prints a human-readable report by default,
//! a deterministic JSON payload with `--json`, and nothing with `--quiet`;
//! exit codes separate bad input (1) from a failed mathematical check (2).

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fanok::ak;
use fanok::bundle;
use fanok::ktheory;
use fanok::lattice::{find_isometries, BilinearLattice};
use fanok::ratio::{render, Rat};
use fanok::registry::{self, FanoDescriptor};
use fanok::sod;

#[derive(Parser)]
#[command(
    name = "fanok",
    version,
    about = "Exact numerical K-theory of Picard-rank-1 Fano threefolds"
)]
struct Cli {
    /// Emit a machine-readable JSON payload instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Print nothing; communicate through the exit code only
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the 17 deformation classes, optionally filtered by index
    Classify {
        /// Keep only descriptors with this Fano index (1..4)
        #[arg(long)]
        index: Option<i64>,
    },
    /// Structure-sheaf basis, Todd class, chi_0 and Euler Gram of one class
    K0 {
        #[arg(long)]
        index: i64,
        #[arg(long)]
        degree: i64,
    },
    /// Check the degree-d complement isometry of the main correspondence
    #[command(name = "verify-rr")]
    VerifyRr {
        /// Degree 1..5 of the index-2 side
        #[arg(conflicts_with = "all", required_unless_present = "all")]
        d: Option<i64>,
        /// Run all five degrees
        #[arg(long)]
        all: bool,
    },
    /// Standard exceptional collection and its orthogonal complement
    Sod {
        #[arg(long)]
        index: i64,
        #[arg(long)]
        degree: i64,
    },
    /// Rank-2 bundle numerology on one side of the correspondence
    Bundle {
        #[command(subcommand)]
        side: BundleSide,
    },
    /// Dimension/degree coincidence between the two bundle families
    Coincidence {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        t: i64,
    },
    /// Enumerate isometries between two Gram files within an entry bound
    Isometry {
        /// JSON file with the source form {"gram": [[..], ..]}
        #[arg(long)]
        g1: PathBuf,
        /// JSON file with the target form
        #[arg(long)]
        g2: PathBuf,
        /// Entries of candidate matrices range over [-bound, bound]
        #[arg(long, default_value_t = 3)]
        bound: u32,
    },
    /// Decide AK-compatibility from a pairing-data JSON file
    Ak {
        /// JSON file: {"n": .., "ranks": [..], "pairings": {"0": [[1]], ..}}
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum BundleSide {
    /// F on the genus side X_{4d+2}, c1 = -H, c2 = (d+2+t)L
    Index1 {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        t: i64,
    },
    /// Instanton-type E on the degree side Y_d, c1 = 0, c2 = kL
    Index2 {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        k: i64,
    },
}

struct Output {
    payload: Value,
    rendered: String,
    check_failed: bool,
}

impl Output {
    fn ok(payload: Value, rendered: String) -> Self {
        Output {
            payload,
            rendered,
            check_failed: false,
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(&cli.command) {
        Ok(out) => {
            if !cli.quiet {
                if cli.json {
                    println!("{}", pretty(&out.payload));
                } else {
                    println!("{}", out.rendered);
                    if out.check_failed {
                        println!("{}", pretty(&out.payload));
                    }
                }
            }
            std::process::exit(if out.check_failed { 2 } else { 0 });
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("payloads are tree-shaped")
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payloads are tree-shaped")
}

fn descriptor(index: i64, degree: i64) -> Result<FanoDescriptor, String> {
    FanoDescriptor::new(index, degree).map_err(|e| e.to_string())
}

fn heading(f: FanoDescriptor) -> String {
    match f.genus() {
        Some(g) => format!(
            "{} (index {}, degree {}, genus {})",
            f.label(),
            f.index(),
            f.degree(),
            g
        ),
        None => format!("{} (index {}, degree {})", f.label(), f.index(), f.degree()),
    }
}

/// `x + (23/6)y + (1/2)z + w` style rendering of a coefficient vector.
fn linear_form(coeffs: &[Rat; 4]) -> String {
    use num_traits::{One, Signed, Zero};
    let vars = ["x", "y", "z", "w"];
    let mut out = String::new();
    for (c, v) in coeffs.iter().zip(vars) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let term = if mag.is_one() {
            v.to_string()
        } else if mag.is_integer() {
            format!("{}{}", render(&mag), v)
        } else {
            format!("({}){}", render(&mag), v)
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
            out.push_str(&term);
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn run(cmd: &Command) -> Result<Output, String> {
    match cmd {
        Command::Classify { index } => classify(*index),
        Command::K0 { index, degree } => k0(*index, *degree),
        Command::VerifyRr { d, all } => verify_rr(*d, *all),
        Command::Sod { index, degree } => sod_cmd(*index, *degree),
        Command::Bundle { side } => match side {
            BundleSide::Index1 { d, t } => bundle_index1(*d, *t),
            BundleSide::Index2 { d, k } => bundle_index2(*d, *k),
        },
        Command::Coincidence { d, k, t } => coincidence(*d, *k, *t),
        Command::Isometry { g1, g2, bound } => isometry(g1, g2, *bound),
        Command::Ak { input } => ak_cmd(input),
    }
}

fn classify(index: Option<i64>) -> Result<Output, String> {
    if let Some(i) = index {
        if !(1..=4).contains(&i) {
            return Err(format!("no deformation class has index {i}; the index lies in 1..4"));
        }
    }
    let rows: Vec<FanoDescriptor> = registry::all()
        .into_iter()
        .filter(|f| index.is_none_or(|i| f.index() as i64 == i))
        .collect();
    let infos: Vec<Value> = rows.iter().map(|f| to_value(&f.describe())).collect();

    let mut table: Vec<[String; 5]> = vec![[
        "class".into(),
        "index".into(),
        "degree".into(),
        "genus".into(),
        "description".into(),
    ]];
    for f in &rows {
        table.push([
            f.label(),
            f.index().to_string(),
            f.degree().to_string(),
            f.genus().map_or_else(|| "-".into(), |g| g.to_string()),
            f.describe().description.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..5)
        .map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let rendered: String = table
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(c, cell)| format!("{:w$}", cell, w = widths[c]))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output::ok(Value::Array(infos), rendered))
}

fn k0(index: i64, degree: i64) -> Result<Output, String> {
    let f = descriptor(index, degree)?;
    let basis = ktheory::structure_sheaf_basis(f);
    let names = ["O_X", "O_H", "O_L", "O_P"];
    let td = ktheory::todd(f);
    let chi0 = ktheory::chi0_coefficients(f);
    let gram = ktheory::EulerGram::new(basis.to_vec()).map_err(|e| e.to_string())?;

    let basis_json: Vec<Value> = names
        .iter()
        .zip(basis.iter())
        .map(|(n, b)| json!({ "name": n, "class": to_value(b) }))
        .collect();
    let payload = json!({
        "descriptor": to_value(&f.describe()),
        "basis": basis_json,
        "todd": to_value(&td),
        "chi0": chi0.iter().map(render).collect::<Vec<_>>(),
        "gram": to_value(gram.matrix()),
    });

    let mut r = vec![heading(f)];
    for (n, b) in names.iter().zip(basis.iter()) {
        r.push(format!("  ch({n}) = {}", b.ch()));
    }
    r.push(format!("  td(X)    = {td}"));
    r.push(format!("  chi_0    = {}", linear_form(&chi0)));
    r.push(format!(
        "  Euler Gram over (O_X, O_H, O_L, O_P): {}",
        gram.matrix().bracket_string()
    ));
    Ok(Output::ok(payload, r.join("\n")))
}

fn verify_rr(d: Option<i64>, all: bool) -> Result<Output, String> {
    let degrees: Vec<i64> = if all { (1..=5).collect() } else { vec![d.expect("clap requires d or --all")] };
    let mut results = Vec::new();
    let mut lines = Vec::new();
    let mut failed = false;
    for d in degrees {
        let v = sod::verify_rr(d).map_err(|e| e.to_string())?;
        let status = if v.passed() { "PASS" } else { "FAIL" };
        failed |= !v.passed();
        lines.push(format!(
            "d = {} (Y_{} vs X_{}): {status}  witness {}",
            v.d,
            v.d,
            4 * v.d + 2,
            sod::distinguished_witness().bracket_string()
        ));
        lines.push(format!("  gramB (degree side) {}", v.gram_b.bracket_string()));
        lines.push(format!("  gramA (genus side)  {}", v.gram_a.bracket_string()));
        lines.push(format!("  W^T gramB W         {}", v.product.bracket_string()));
        lines.push(format!("  bound-3 isometries  {}", v.witnesses.len()));
        results.push(to_value(&v));
    }
    let payload = json!({ "results": results, "allPassed": !failed });
    Ok(Output {
        payload,
        rendered: lines.join("\n"),
        check_failed: failed,
    })
}

fn sod_cmd(index: i64, degree: i64) -> Result<Output, String> {
    let f = descriptor(index, degree)?;
    let collection = sod::standard_collection(f).map_err(|e| e.to_string())?;
    let report = sod::check_exceptional(&collection).map_err(|e| e.to_string())?;
    let complement = sod::right_orthogonal(&collection).map_err(|e| e.to_string())?;
    let exceptional = report.is_numerically_exceptional();

    let payload = json!({
        "descriptor": to_value(&f.describe()),
        "collection": to_value(&collection),
        "numericallyExceptional": exceptional,
        "offendingPairs": to_value(&report.offending_pairs),
        "complement": to_value(&complement),
    });

    let mut r = vec![heading(f)];
    let names: Vec<String> = if f.index() == 1 {
        vec!["E_2".into(), "O_X".into()]
    } else {
        (0..f.index() as i64).map(|m| format!("O({m}H)")).collect()
    };
    r.push("collection:".into());
    for (n, c) in names.iter().zip(collection.iter()) {
        r.push(format!("  {n}: {}", c.ch()));
    }
    r.push(format!(
        "numerically exceptional: {}",
        if exceptional { "yes" } else { "no" }
    ));
    r.push(format!("complement rank {}", complement.rank()));
    r.push(format!(
        "  coordinates over (O_X, O_H, O_L, O_P): {}",
        complement.coordinates.bracket_string()
    ));
    for b in &complement.basis {
        r.push(format!("  basis class: {}", b.ch()));
    }
    r.push(format!(
        "  complement Gram: {}",
        complement.gram.matrix().bracket_string()
    ));
    Ok(Output {
        payload,
        rendered: r.join("\n"),
        check_failed: !exceptional,
    })
}

fn bundle_index1(d: i64, t: i64) -> Result<Output, String> {
    let n = bundle::numerology_index1(d, t).map_err(|e| e.to_string())?;
    let payload = to_value(&n);
    let r = [
        format!(
            "F on X_{} (d = {d}, t = {t}): c1 = -H, c2 = {}L",
            4 * d + 2,
            d + 2 + t
        ),
        format!("  chi(F^*) = {}", n.chi),
        format!("  degree from c2(F^*) = c2(F): {}", n.degree_computed),
        format!("  degree closed form:          {}", n.degree_closed_form),
        format!(
            "  discrepancy: {}",
            if n.discrepancy { "yes" } else { "no" }
        ),
    ];
    Ok(Output::ok(payload, r.join("\n")))
}

fn bundle_index2(d: i64, k: i64) -> Result<Output, String> {
    let n = bundle::numerology_index2(d, k).map_err(|e| e.to_string())?;
    let payload = to_value(&n);
    let r = [
        format!("E on Y_{d} (k = {k}): c1 = 0, c2 = {k}L"),
        format!("  chi(E^*(1)) = {}", n.chi),
        format!("  degree      = {}", n.degree),
    ];
    Ok(Output::ok(payload, r.join("\n")))
}

fn coincidence(d: i64, k: i64, t: i64) -> Result<Output, String> {
    let r = bundle::coincidence_check(d, k, t).map_err(|e| e.to_string())?;
    let payload = to_value(&r);
    let yn = |b: bool| if b { "yes" } else { "no" };
    let lines = [
        format!("(d, k, t) = ({d}, {k}, {t})"),
        format!(
            "  dimensions: index-1 side {} vs index-2 side {} (coincide: {})",
            r.dim_index1,
            r.dim_index2,
            yn(r.dimensions_coincide)
        ),
        format!(
            "  degrees:    index-1 side {} vs index-2 side {} (coincide: {})",
            r.degree_index1,
            r.degree_index2,
            yn(r.degrees_coincide)
        ),
        format!("  condition d + 1 = 2k - t: {}", yn(r.condition_holds)),
    ];
    Ok(Output::ok(payload, lines.join("\n")))
}

fn read_lattice(path: &PathBuf) -> Result<BilinearLattice, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn isometry(g1: &PathBuf, g2: &PathBuf, bound: u32) -> Result<Output, String> {
    let l1 = read_lattice(g1)?;
    let l2 = read_lattice(g2)?;
    if l1.rank() != l2.rank() {
        return Err(format!(
            "rank mismatch: {} has rank {}, {} has rank {}",
            g1.display(),
            l1.rank(),
            g2.display(),
            l2.rank()
        ));
    }
    let witnesses = find_isometries(&l1, &l2, bound);
    let payload = json!({
        "g1": to_value(&l1),
        "g2": to_value(&l2),
        "bound": bound,
        "count": witnesses.len(),
        "witnesses": to_value(&witnesses),
    });
    let mut r = vec![format!(
        "{} isometries with entries in [-{bound}, {bound}]",
        witnesses.len()
    )];
    for w in &witnesses {
        r.push(format!("  {}", w.bracket_string()));
    }
    Ok(Output::ok(payload, r.join("\n")))
}

fn ak_cmd(input: &PathBuf) -> Result<Output, String> {
    let text = fs::read_to_string(input).map_err(|e| format!("{}: {e}", input.display()))?;
    let data: ak::PairingData =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", input.display()))?;
    let verdict = ak::ak_compatible(&data);
    let payload = json!({
        "n": data.n(),
        "ranks": data.ranks(),
        "verdict": verdict.verdict,
        "reason": verdict.reason,
        "failingP": verdict.failing_p,
    });
    let r = format!(
        "AK-compatible: {} ({})",
        if verdict.verdict { "yes" } else { "no" },
        verdict.reason
    );
    Ok(Output {
        payload,
        rendered: r,
        check_failed: !verdict.verdict,
    })
}
