//! `mesharc`: construct mesh algebras of stable translation quivers,
//! compute their syzygy twist data, evaluate the closed-form dimension and
//! period rules, and cross-validate the two against each other.
//!
//! Exit codes: 0 success, 1 validation mismatch, 2 usage error,
//! 3 computation limit hit (non-finite-dimensional input).

use clap::{Parser, Subcommand, ValueEnum};
use mesharc_core::error::MeshError;
use mesharc_core::field::FieldSpec;
use mesharc_core::report::*;

mod commands;

#[derive(Parser)]
#[command(name = "mesharc", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct a quiver and its mesh algebra; print dimension, Cartan
    /// matrix and Loewy length.
    Build {
        /// Quiver spec, e.g. "quotient A2 m=1" or "quotient G2 m=2".
        spec: String,
        /// Ground characteristic (0 or a prime).
        #[arg(long = "char", default_value = "0")]
        characteristic: String,
        /// Write a DOT rendering of the quiver to this path.
        #[arg(long)]
        dot: Option<String>,
        /// Write the full based-algebra JSON dump to this path.
        #[arg(long)]
        dump: Option<String>,
    },
    /// Evaluate the closed-form dimension/period rules for a type triple.
    Oracle {
        /// Tree class, e.g. D6.
        #[arg(long = "type")]
        delta: String,
        /// Frequency, e.g. 1, 2, or 1/3.
        #[arg(long, default_value = "1")]
        f: String,
        /// Torsion order: 1, 2 or 3.
        #[arg(long, default_value_t = 1)]
        t: u8,
        #[arg(long = "char", default_value = "0")]
        characteristic: String,
    },
    /// Bimodule resolution data: the syzygy twist and the minimal direct
    /// exponent.
    Resolve {
        spec: String,
        #[arg(long = "char", default_value = "0")]
        characteristic: String,
        /// Sweep bound for the direct search (default 6 * vertices).
        #[arg(long)]
        dmax: Option<usize>,
    },
    /// Grade a base algebra, form the smash product, verify it against the
    /// quotient construction, and report the lifted shift data.
    Cover {
        /// Base family and rank, e.g. A3 (doubled tree) or G2.
        #[arg(long)]
        base: String,
        /// Grading modulus.
        #[arg(long)]
        m: u64,
        #[arg(long = "char", default_value = "0")]
        characteristic: String,
    },
    /// Orbit-category sign calculus for a quotient of a derived Dynkin
    /// category.
    Orbit {
        /// Simply laced class, e.g. D6.
        #[arg(long)]
        delta: String,
        /// Generator exponents, e.g. "S^0 Sigma^3"; omit for the ambient
        /// category itself.
        #[arg(long = "F")]
        f_word: Option<String>,
        #[arg(long = "char", default_value = "0")]
        characteristic: String,
    },
    /// Sweep a (family, m, characteristic) grid comparing the direct twist
    /// computation against the closed-form rule. Exit 1 on any mismatch.
    Crosscheck {
        /// Comma-separated families, e.g. A2,A3,D4.
        #[arg(long, default_value = "A2,A3,D4")]
        families: String,
        #[arg(long, default_value_t = 4)]
        m_max: u64,
        /// Comma-separated characteristics.
        #[arg(long, default_value = "0,2,3")]
        chars: String,
        #[arg(long)]
        dmax: Option<usize>,
    },
    /// Internal-consistency sweeps of the closed-form rules and the orbit
    /// solver. Exit 1 on any discrepancy.
    Sweep {
        #[arg(long, value_enum)]
        suite: commands::Suite,
        #[arg(long, default_value_t = 12)]
        max: u64,
    },
}

fn parse_char(s: &str) -> Result<FieldSpec, MeshError> {
    s.parse()
}

fn main() {
    let cli = Cli::parse();
    let json = cli.format == Format::Json;
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let _ = json;
            match e {
                MeshError::Truncation { .. } => 3,
                MeshError::Parse(_)
                | MeshError::InvalidDynkin(_)
                | MeshError::InvalidQuotient(_)
                | MeshError::InvalidField(_)
                | MeshError::Unsupported(_) => 2,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32, MeshError> {
    let json = cli.format == Format::Json;
    match cli.cmd {
        Cmd::Build {
            spec,
            characteristic,
            dot,
            dump,
        } => {
            let fs = parse_char(&characteristic)?;
            let report = commands::build(&spec, fs, dot.as_deref(), dump.as_deref())?;
            print_build(&report, json);
            Ok(0)
        }
        Cmd::Oracle {
            delta,
            f,
            t,
            characteristic,
        } => {
            let fs = parse_char(&characteristic)?;
            let report = commands::oracle(&delta, &f, t, fs)?;
            print_oracle(&report, json);
            Ok(0)
        }
        Cmd::Resolve {
            spec,
            characteristic,
            dmax,
        } => {
            let fs = parse_char(&characteristic)?;
            let report = commands::resolve(&spec, fs, dmax)?;
            print_resolve(&report, json);
            Ok(0)
        }
        Cmd::Cover {
            base,
            m,
            characteristic,
        } => {
            let fs = parse_char(&characteristic)?;
            let report = commands::cover(&base, m, fs)?;
            print_cover(&report, json);
            Ok(0)
        }
        Cmd::Orbit {
            delta,
            f_word,
            characteristic,
        } => {
            let fs = parse_char(&characteristic)?;
            let report = commands::orbit(&delta, f_word.as_deref(), fs)?;
            print_orbit(&report, json);
            Ok(0)
        }
        Cmd::Crosscheck {
            families,
            m_max,
            chars,
            dmax,
        } => {
            let report = commands::crosscheck(&families, m_max, &chars, dmax)?;
            print_crosscheck(&report, json);
            if report.mismatches > 0 {
                Ok(1)
            } else {
                if report.inconclusive > 0 {
                    eprintln!(
                        "warning: {} inconclusive entries (all conclusive entries match)",
                        report.inconclusive
                    );
                }
                Ok(0)
            }
        }
        Cmd::Sweep { suite, max } => {
            let (rows, mismatches) = commands::sweep(suite, max)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "schema": SCHEMA_VERSION,
                        "rows": rows,
                        "mismatches": mismatches,
                    })
                );
            } else {
                for r in &rows {
                    println!("{r}");
                }
                println!("mismatches: {mismatches}");
            }
            Ok(if mismatches > 0 { 1 } else { 0 })
        }
    }
}

fn print_build(r: &BuildReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(r).unwrap());
    } else {
        println!("input:        {}", r.input);
        println!("char:         {}", r.characteristic);
        println!("vertices:     {}", r.vertices);
        println!("arrows:       {}", r.arrows);
        println!("dimension:    {}", r.dimension);
        println!("loewy length: {}", r.loewy_length);
        println!("cartan matrix:");
        for row in &r.cartan_matrix {
            println!(
                "  {}",
                row.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
        if let Some(p) = &r.dot_path {
            println!("dot:          {p}");
        }
    }
}

fn print_oracle(r: &OracleReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(r).unwrap());
    } else {
        println!("input:   {}", r.input);
        println!("status:  {:?}", r.verdict.status);
        if let Some(d) = r.verdict.d {
            println!("d:       {d}");
        }
        if let Some(p) = r.verdict.period {
            println!("period:  {p}");
        }
        if let Some(c) = &r.verdict.period_candidates {
            println!("period candidates: {c:?}");
        }
        println!("clause:  {}", r.verdict.clause);
        for w in &r.verdict.witnesses {
            println!("witness: {w}");
        }
    }
}

fn print_resolve(r: &ResolveReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(r).unwrap());
    } else {
        println!("input:      {}", r.input);
        println!("dimension:  {}", r.dimension);
        println!(
            "projective terms: {} / {} / {} summands",
            r.p0_summands, r.p1_summands, r.p2_summands
        );
        println!("nakayama permutation: {:?}", r.nakayama_permutation);
        println!("twist vertex permutation: {:?}", r.twist_vertex_permutation);
        for ai in &r.twist_arrow_images {
            println!("  {} -> {}", ai.arrow, ai.image);
        }
        match r.minimal_d {
            Some(d) => println!("minimal d: {d}  [{}]", r.provenance),
            None => println!("minimal d: none <= {}  [{}]", r.d_max, r.provenance),
        }
    }
}

fn print_cover(r: &CoverReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(r).unwrap());
    } else {
        println!("input:            {}", r.input);
        println!("modulus:          {}", r.modulus);
        println!("base dimension:   {}", r.base_dimension);
        println!("smash dimension:  {}", r.smash_dimension);
        println!("quotient match:   {}", r.quotient_isomorphic);
        println!("dual lift ok:     {}", r.dual_lift_checked);
        if let Some(x) = r.nakayama_shift {
            println!("nakayama shift:   {x}");
        }
        if let Some(s) = &r.simple_syzygy_shifts {
            println!("simple syzygy shifts: {s:?}");
        }
        if let Some(x) = r.xi_degree {
            println!("xi degree:        {x}");
        }
        if let Some(x) = r.omega6_shift {
            println!("sixth-syzygy shift: {x}");
        }
        if let Some(x) = &r.mixed_xi_degrees {
            println!("mixed xi degrees: {x:?}");
        }
    }
}

fn print_orbit(r: &OrbitReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(r).unwrap());
    } else {
        println!("input:   {}", r.input);
        println!("lattice: {:?}", r.lattice);
        for rel in &r.relations {
            println!(
                "relation: S^{} Sigma^{} = eps^{}",
                rel.s_exp, rel.sigma_exp, rel.sign_exp
            );
        }
        println!("cy d:         {:?}", r.cy_d);
        println!("sigma period: {:?}", r.sigma_period);
        println!("(minimal with respect to the certified relations)");
    }
}

fn print_crosscheck(r: &CrosscheckReport, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(r).unwrap());
    } else {
        println!("family rank m char predicted computed match");
        for row in &r.rows {
            println!(
                "{}{} m={} char={} {} {} {}",
                row.family,
                row.rank,
                row.m,
                row.characteristic,
                row.predicted,
                row.computed,
                if row.inconclusive {
                    "inconclusive"
                } else if row.matches {
                    "ok"
                } else {
                    "MISMATCH"
                }
            );
        }
        println!(
            "mismatches: {}  inconclusive: {}",
            r.mismatches, r.inconclusive
        );
    }
}
