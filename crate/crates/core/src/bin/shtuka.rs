use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use shtuka_degrees::bundles::{BlockTag, HermitianPair, LineBundleClass, OffDiagonal};
use shtuka_degrees::curve::{script_l, QuadraticTwist};
use shtuka_degrees::degrees::{
    asw_degree, closed_form_degree, cycle_coefficient, duplication_scalar, gkz_rhs, script_d_coefficient,
    z2_intersection_degree, SpecialCycle,
};
use shtuka_degrees::algebra::ExpPoly;
use shtuka_degrees::report::{cyc_json, degree_json, fraction_json, load_bcl, poly_json};
use shtuka_degrees::workspace::{verify_all, CheckStatus, VerifySummary, Workspace, DEFAULT_MAX_ORDER};
use shtuka_degrees::{Error, Result};

/// Exact Eisenstein coefficients and special-cycle degrees for unitary
/// shtukas over a curve with an etale double cover.
#[derive(Parser)]
#[command(name = "shtuka", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Zeta numerators of X and X' and L(s, eta)
    Zeta(Common),
    /// List the characters of Pic(X') of small order
    Chars {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = RestrictionArg::All)]
        restriction: RestrictionArg,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: u32,
    },
    /// Normalized coefficient of E = E1 + E2 with a = diag(a1, a2)
    EisCoeff {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long, value_parser = parse_block, default_value = "zero")]
        a1: BlockTag,
        /// Divide by q^{2sw} L_2(s, chi_0) to get the raw coefficient
        #[arg(long)]
        unnormalized: bool,
    },
    /// Compare the genus-drop coefficient with its closed form on the grid
    GenusDropCheck(Common),
    /// Intersection degree of Z(E1, 0) . Z(E2, a2)
    Degree {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        bundle: BundleArgs,
        /// Order of the central derivative (even)
        #[arg(long)]
        r: u32,
        /// Also evaluate the Siegel-Weil and closed-form routes and compare
        #[arg(long)]
        verify: bool,
    },
    /// The coefficient chi(E1) q^{-d(E1)} deg of the doubling kernel
    Dkernel {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long, value_parser = parse_block, default_value = "zero")]
        a1: BlockTag,
        /// Order of the central derivative (even)
        #[arg(long)]
        r: u32,
    },
    /// Right-hand side of the GKZ identity and the duplication scalar
    GkzRhs {
        #[command(flatten)]
        common: Common,
        /// JSON file with lpoly and f_coefficient
        #[arg(long)]
        bcl: PathBuf,
        /// Index of the finite part of the self-dual E2
        #[arg(long, default_value_t = 0)]
        e2_index: usize,
        /// Rank parameter: the kernel has n = 2m
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Order of the central derivative (even)
        #[arg(long)]
        r: u32,
    },
    /// Run every named check on the workspace
    VerifyAll(Common),
}

#[derive(Args)]
struct Common {
    /// Curve spec file
    spec: PathBuf,
    /// Emit a JSON record instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BundleArgs {
    /// Degree of E1 on X'
    #[arg(long, allow_hyphen_values = true)]
    deg_e1: i64,
    /// Index of the finite part of E1 in Pic^0(X')
    #[arg(long, default_value_t = 0)]
    e1_index: usize,
    /// Index of the finite part of the self-dual E2
    #[arg(long, default_value_t = 0)]
    e2_index: usize,
    /// Index into the characters with the chosen restriction
    #[arg(long, default_value_t = 0)]
    chi_index: usize,
    #[arg(long, value_enum, default_value_t = TwistArg::Trivial)]
    restriction: TwistArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum TwistArg {
    Trivial,
    Eta,
}

impl From<TwistArg> for QuadraticTwist {
    fn from(t: TwistArg) -> Self {
        match t {
            TwistArg::Trivial => QuadraticTwist::Trivial,
            TwistArg::Eta => QuadraticTwist::Eta,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RestrictionArg {
    All,
    Trivial,
    Eta,
}

fn parse_block(s: &str) -> std::result::Result<BlockTag, String> {
    BlockTag::parse(s).map_err(|e| e.to_string())
}

struct Resolved {
    e1: LineBundleClass,
    e2: LineBundleClass,
    chi: shtuka_degrees::picard::HeckeCharacter,
}

impl BundleArgs {
    fn resolve(&self, ws: &Workspace) -> Result<Resolved> {
        Ok(Resolved {
            e1: ws.class(self.deg_e1, self.e1_index)?,
            e2: ws.selfdual_class(self.e2_index)?,
            chi: ws.character(self.restriction.into(), self.chi_index)?,
        })
    }

    fn echo(&self) -> Value {
        json!({
            "deg_e1": self.deg_e1,
            "e1_index": self.e1_index,
            "e2_index": self.e2_index,
            "chi_index": self.chi_index,
            "restriction": QuadraticTwist::from(self.restriction).name(),
        })
    }
}

/// Write errors (a closed pipe) are ignored.
fn emit(json_mode: bool, record: &Value, text: impl FnOnce() -> String) {
    let out = if json_mode { serde_json::to_string_pretty(record).expect("serializable") + "\n" } else { text() };
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn cmd_zeta(c: &Common) -> Result<()> {
    let ws = Workspace::load(&c.spec)?;
    let cover = &ws.cover;
    let record = json!({
        "label": cover.label(),
        "q": cover.q(),
        "genus": cover.genus(),
        "cover_genus": cover.cover_genus(),
        "deg_omega": cover.deg_omega(),
        "zeta_x": poly_json(cover.zeta_x()),
        "zeta_x_prime": poly_json(cover.zeta_x_prime()),
        "eta_l": poly_json(cover.eta_l()),
    });
    emit(c.json, &record, || {
        format!(
            "curve        {}\nq            {}\ngenus        g = {}, g' = {}\ndeg omega_X  {}\nP_X(t)       {}\nP_X'(t)      {}\nL(s, eta)    {}\n",
            cover.label(),
            cover.q(),
            cover.genus(),
            cover.cover_genus(),
            cover.deg_omega(),
            cover.zeta_x(),
            cover.zeta_x_prime(),
            cover.eta_l()
        )
    });
    Ok(())
}

fn cmd_chars(c: &Common, restriction: RestrictionArg, max_order: u32) -> Result<()> {
    let ws = Workspace::from_spec(shtuka_degrees::curve::CurveSpec::load(&c.spec)?, max_order)?;
    let mut rows = Vec::new();
    for tag in [QuadraticTwist::Trivial, QuadraticTwist::Eta] {
        let wanted = match restriction {
            RestrictionArg::All => true,
            RestrictionArg::Trivial => tag == QuadraticTwist::Trivial,
            RestrictionArg::Eta => tag == QuadraticTwist::Eta,
        };
        if !wanted {
            continue;
        }
        for (i, chi) in ws.characters_with(tag).into_iter().enumerate() {
            rows.push(json!({
                "index": i,
                "restriction": tag.name(),
                "order": chi.order(),
                "degree_exponent": chi.chi.degree_exp(),
                "finite_exponents": chi.chi.finite_exps(),
            }));
        }
    }
    let invariants = ws.pic.x_prime().finite().invariants().to_vec();
    let record = json!({ "pic0_invariants": invariants, "max_order": max_order, "characters": rows });
    emit(c.json, &record, || {
        let mut s = format!("Pic^0(X') = {}\n", group_name(&invariants));
        s.push_str("restriction  index  order  deg-exp  finite-exps\n");
        for r in &rows {
            s.push_str(&format!(
                "{:<12} {:>5}  {:>5}  {:>7}  {}\n",
                r["restriction"].as_str().unwrap(),
                r["index"],
                r["order"],
                r["degree_exponent"],
                r["finite_exponents"]
            ));
        }
        s
    });
    Ok(())
}

fn group_name(invariants: &[u32]) -> String {
    if invariants.is_empty() {
        return "0 (not tracked)".into();
    }
    invariants.iter().map(|n| format!("Z/{n}")).collect::<Vec<_>>().join(" x ")
}

fn cmd_eis_coeff(c: &Common, b: &BundleArgs, a1: BlockTag, unnormalized: bool) -> Result<()> {
    let ws = Workspace::load(&c.spec)?;
    let r = b.resolve(&ws)?;
    let pair = HermitianPair { e1: r.e1, e2: r.e2, a1, a2: BlockTag::Iso, offdiag: OffDiagonal::Resolved };
    let mut value = cycle_coefficient(&ws.pic, &ws.cover, &SpecialCycle::Rank2(pair), &r.chi)?;
    if unnormalized {
        let factor = script_l(&ws.cover, 2, r.chi.restriction).mul_poly(&ExpPoly::t_power(ws.cover.q(), -2 * ws.cover.deg_omega()));
        value = value.div(&factor)?;
    }
    let mut derivatives = Vec::new();
    for k in 0..=4 {
        derivatives.push(match value.central_derivative(k) {
            Ok(d) => cyc_json(&d.value),
            Err(e) => json!(e.to_string()),
        });
    }
    let record = json!({
        "inputs": b.echo(),
        "a1": a1.name(),
        "normalized": !unnormalized,
        "coefficient": fraction_json(&value),
        "central_derivatives": derivatives,
    });
    emit(c.json, &record, || {
        let mut s = format!("E~(s) = {value}\n");
        for (k, d) in derivatives.iter().enumerate() {
            s.push_str(&format!("d^{k}/ds^{k} at 0: {}\n", d.get("rational").and_then(Value::as_str).map_or_else(|| d.to_string(), str::to_string)));
        }
        s
    });
    Ok(())
}

fn cmd_genus_drop_check(c: &Common) -> Result<()> {
    let ws = Workspace::load(&c.spec)?;
    let summary = verify_all(&ws);
    let outcome = summary
        .checks
        .iter()
        .find(|o| o.name == shtuka_degrees::eisenstein::CHECK_DUAL_PATH)
        .expect("dual-path check present");
    if outcome.status == CheckStatus::Fail {
        return Err(Error::Invariant { check: outcome.name.clone(), detail: outcome.detail.clone() });
    }
    let record = json!({ "check": outcome.name, "status": outcome.status.name(), "detail": outcome.detail });
    emit(c.json, &record, || format!("{}: {} ({})\n", outcome.name, outcome.status.name(), outcome.detail));
    Ok(())
}

fn cmd_degree(c: &Common, b: &BundleArgs, r: u32, verify: bool) -> Result<()> {
    if r % 2 == 1 {
        return Err(Error::OddOrder(r));
    }
    let ws = Workspace::load(&c.spec)?;
    let x = b.resolve(&ws)?;
    let main = z2_intersection_degree(&ws.pic, &ws.cover, x.e1, BlockTag::Zero, x.e2, &x.chi, r, None)?;
    let mut paths = vec![main.clone()];
    if verify {
        let pair = HermitianPair { e1: x.e1, e2: x.e2, a1: BlockTag::Zero, a2: BlockTag::Iso, offdiag: OffDiagonal::Resolved };
        paths.push(asw_degree(&ws.pic, &ws.cover, &SpecialCycle::Rank2(pair), &x.chi, r)?);
        if x.chi.restriction == QuadraticTwist::Trivial {
            paths.push(closed_form_degree(&ws.pic, &ws.cover, x.e1, x.e2, r)?);
        }
        if let Some(bad) = paths.iter().find(|p| p.value != main.value) {
            return Err(Error::Invariant {
                check: shtuka_degrees::degrees::CHECK_DEGREE_CONSISTENCY.into(),
                detail: format!("{} gives {}, {} gives {}", main.path, main.value, bad.path, bad.value),
            });
        }
    }
    let record = json!({
        "formula_path": main.path.name(),
        "value": degree_json(&main)["value"],
        "r": r,
        "inputs": b.echo(),
        "paths": paths.iter().map(degree_json).collect::<Vec<_>>(),
    });
    emit(c.json, &record, || {
        paths.iter().map(|p| format!("{:<12} r = {}  degree = {}\n", p.path.name(), p.r, p.value)).collect()
    });
    Ok(())
}

fn cmd_dkernel(c: &Common, b: &BundleArgs, a1: BlockTag, r: u32) -> Result<()> {
    if r % 2 == 1 {
        return Err(Error::OddOrder(r));
    }
    let ws = Workspace::load(&c.spec)?;
    let x = b.resolve(&ws)?;
    let value = script_d_coefficient(&ws.pic, &ws.cover, x.e1, a1, x.e2, &x.chi, r, None)?;
    let record = json!({ "inputs": b.echo(), "a1": a1.name(), "r": r, "value": cyc_json(&value) });
    emit(c.json, &record, || format!("D coefficient (r = {r}) = {value}\n"));
    Ok(())
}

fn cmd_gkz(c: &Common, bcl: &PathBuf, e2_index: usize, m: u32, r: u32) -> Result<()> {
    if r % 2 == 1 {
        return Err(Error::OddOrder(r));
    }
    if m == 0 {
        return Err(Error::Parse("m must be positive".into()));
    }
    let ws = Workspace::load(&c.spec)?;
    let bc = load_bcl(bcl, ws.cover.q())?;
    let e2 = ws.selfdual_class(e2_index)?;
    let rhs = gkz_rhs(&bc, &ws.pic, &ws.cover, e2, m, r)?;
    let scalar = duplication_scalar(&bc, &ws.cover, 2 * m)?;
    let record = json!({
        "m": m,
        "r": r,
        "e2_index": e2_index,
        "lpoly": poly_json(&bc.lpoly),
        "f_coefficient": cyc_json(&bc.f_coefficient),
        "rhs": cyc_json(&rhs),
        "duplication_scalar": fraction_json(&scalar),
    });
    emit(c.json, &record, || format!("GKZ right-hand side (m = {m}, r = {r}) = {rhs}\nduplication scalar c(s) = {scalar}\n"));
    Ok(())
}

fn print_summary(summary: &VerifySummary, json_mode: bool) {
    emit(json_mode, &summary.to_json(), || {
        let mut s = format!("verify-all: {}\n", summary.label);
        for c in &summary.checks {
            s.push_str(&format!("  {:<4} {:<28} {}\n", c.status.name(), c.name, c.detail));
        }
        s.push_str(&format!(
            "{} passed, {} failed, {} skipped\n",
            summary.count(CheckStatus::Pass),
            summary.count(CheckStatus::Fail),
            summary.count(CheckStatus::Skip)
        ));
        if let Some(f) = summary.first_failure() {
            s.push_str(&format!("first failure: {}\n", f.name));
        }
        s
    });
}

fn cmd_verify_all(c: &Common) -> i32 {
    let summary = match Workspace::load(&c.spec) {
        Ok(ws) => verify_all(&ws),
        Err(e @ Error::Parse(_)) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
        Err(e) => VerifySummary::load_failure(&c.spec.display().to_string(), &e),
    };
    print_summary(&summary, c.json);
    if let Some(f) = summary.first_failure() {
        eprintln!("error: first failing check: {}", f.name);
    }
    summary.exit_code()
}

fn run(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Zeta(c) => cmd_zeta(c),
        Command::Chars { common, restriction, max_order } => cmd_chars(common, *restriction, *max_order),
        Command::EisCoeff { common, bundle, a1, unnormalized } => cmd_eis_coeff(common, bundle, *a1, *unnormalized),
        Command::GenusDropCheck(c) => cmd_genus_drop_check(c),
        Command::Degree { common, bundle, r, verify } => cmd_degree(common, bundle, *r, *verify),
        Command::Dkernel { common, bundle, a1, r } => cmd_dkernel(common, bundle, *a1, *r),
        Command::GkzRhs { common, bcl, e2_index, m, r } => cmd_gkz(common, bcl, *e2_index, *m, *r),
        Command::VerifyAll(_) => unreachable!("handled in main"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::VerifyAll(c) = &cli.command {
        return ExitCode::from(cmd_verify_all(c) as u8);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
