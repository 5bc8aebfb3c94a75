use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use wordavoid::enumerate::{count_avoiding, growth_rate, lower_bound_family, minimal_forbidden, FactorAutomaton};
use wordavoid::instances::{run_scenario, Registry, ScenarioReport, SCENARIOS};
use wordavoid::morphism::DEFAULT_ENUMERATION_CAP;
use wordavoid::scan::{perfect_shuffle, scan_forbidden, GapPattern, Scanner};
use wordavoid::verify::{
    find_interchanges, interchange_pattern, prove_gap_pattern_absence, render_certificate, verify_square_transfer,
    VerifyOptions, DEFAULT_DEPTH,
};
use wordavoid::word::{parse_word_list, render_word_list, Word};
use wordavoid::{AvoidanceSpec, Growth, Morphism, Substitution};

/// Construct, verify and count words avoiding large squares and cubes.
///
/// SPEC arguments accept a spec file or a built-in name (dekking,
/// fraenkel-simpson, ejs2, ejs3, or any spec in the pinned registry).
/// Morphism and substitution arguments likewise accept registry names.
/// Set RAYON_NUM_THREADS to limit worker threads.
#[derive(Debug, Parser)]
#[command(name = "wordavoid", version)]
struct Cli {
    /// Seed for sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Do not echo the configuration on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Prefix of a fixed point.
    Generate {
        #[arg(long)]
        morphism: String,
        #[arg(long, default_value_t = 0)]
        seed_letter: u8,
        #[arg(long)]
        length: usize,
    },
    /// Repetitions, forbidden factors and gap patterns in a word.
    Scan {
        #[arg(long)]
        word: PathBuf,
        /// Smallest square root reported.
        #[arg(long, default_value_t = 1)]
        min_root: usize,
        #[arg(long)]
        cubes: bool,
        #[arg(long)]
        factors: Option<PathBuf>,
        /// Letters `b,c,a` of the pattern b α c α a.
        #[arg(long, value_parser = parse_gap)]
        gap_pattern: Option<GapPattern>,
        /// Maximum number of occurrences listed.
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Square-transfer certificate for a uniform morphism.
    Verify {
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long)]
        root_cap: Option<usize>,
        /// Restrict source words to factors of this morphism's fixed point,
        /// and use it for descent proofs of gap patterns.
        #[arg(long)]
        fixed_point: Option<String>,
        #[arg(long, default_value_t = 0)]
        fixed_point_seed: u8,
    },
    /// Number of legal words of each length, as CSV.
    Count {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        n_max: usize,
    },
    /// Minimal forbidden words up to a length.
    Forbidden {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        max_len: usize,
    },
    /// Growth rate of the words avoiding a list of factors.
    Growth {
        #[arg(long)]
        forbidden: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 1_000_000)]
        max_iterations: usize,
        /// Alphabet size; inferred from the words by default.
        #[arg(long)]
        alphabet: Option<u8>,
    },
    /// Lower-bound family outer(sub(seed word)) checked against a spec.
    Family {
        #[arg(long)]
        sub: String,
        #[arg(long)]
        outer: String,
        #[arg(long)]
        seed_word: String,
        #[arg(long)]
        target: String,
        /// Compare the family size with 2^(n / divisor).
        #[arg(long)]
        divisor: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        #[arg(long, default_value_t = 64)]
        samples: u64,
    },
    /// Perfect shuffle of two words of equal length.
    Shuffle {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Run the pinned scenarios.
    Scenario {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct MapArg {
    #[arg(long)]
    morphism: Option<String>,
    /// Substitution, verified in its hatted form.
    #[arg(long)]
    substitution: Option<String>,
}

fn parse_gap(s: &str) -> Result<GapPattern, String> {
    let xs: Vec<u8> = s
        .split(',')
        .map(|x| x.trim().parse::<u8>().map_err(|e| format!("{x}: {e}")))
        .collect::<Result<_, _>>()?;
    match xs[..] {
        [b, c, a] => Ok(GapPattern::new(b, c, a)),
        _ => Err("expected three letters b,c,a".into()),
    }
}

enum Failure {
    Usage(String),
    Checks,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: wordavoid::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_word(path: &Path) -> Result<Word, Failure> {
    let text: String = read(path)?.chars().filter(|c| !c.is_whitespace()).collect();
    in_file(path, Word::parse_infer(&text))
}

/// A file if one exists at `arg`, otherwise a registry entry.
fn resolve<T: Clone>(
    arg: &str,
    parse: impl Fn(&str) -> wordavoid::Result<T>,
    lookup: impl Fn(&str) -> wordavoid::Result<T>,
) -> Result<T, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        in_file(path, parse(&read(path)?))
    } else {
        lookup(arg).map_err(|_| Failure::Usage(format!("`{arg}` is neither a file nor a registry entry")))
    }
}

struct Inputs {
    reg: Registry,
}

impl Inputs {
    fn spec(&self, arg: &str) -> Result<AvoidanceSpec, Failure> {
        resolve(arg, AvoidanceSpec::parse, |n| self.reg.spec(n).cloned())
    }

    fn morphism(&self, arg: &str) -> Result<Morphism, Failure> {
        resolve(arg, Morphism::parse, |n| self.reg.morphism(n).cloned())
    }

    fn substitution(&self, arg: &str) -> Result<Substitution, Failure> {
        resolve(arg, Substitution::parse, |n| self.reg.substitution(n).cloned())
    }
}

fn emit_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serialisable"));
}

fn checks(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run(cli: &Cli) -> Outcome {
    let inputs = Inputs { reg: Registry::pinned() };
    let format = cli.format;
    match &cli.command {
        Command::Generate {
            morphism,
            seed_letter,
            length,
        } => {
            let m = inputs.morphism(morphism)?;
            let w = m.fixed_point_prefix(*seed_letter, *length)?;
            match format.unwrap_or(Format::Text) {
                Format::Json => emit_json(&json!({ "length": w.len(), "prefix": w.to_string() })),
                _ => println!("{w}"),
            }
            Ok(())
        }
        Command::Scan {
            word,
            min_root,
            cubes,
            factors,
            gap_pattern,
            limit,
        } => {
            let w = read_word(word)?;
            let scanner = Scanner::new(w.symbols());
            let squares = scanner.squares(*min_root, w.len() / 2);
            let mut report = json!({
                "length": w.len(),
                "max_square_root": scanner.max_square_root(),
                "square_count": squares.len(),
                "squares": squares.iter().take(*limit).collect::<Vec<_>>(),
            });
            if *cubes {
                let cs = scanner.cubes(w.len() / 3);
                report["cube_count"] = json!(cs.len());
                report["cubes"] = json!(cs.iter().take(*limit).collect::<Vec<_>>());
            }
            if let Some(path) = factors {
                let fs = in_file(path, parse_word_list(&read(path)?, Some(w.alphabet_size())))?;
                report["forbidden_factor"] = json!(scan_forbidden(&w, &fs)?);
            }
            if let Some(p) = gap_pattern {
                p.check_alphabet(w.alphabet_size())?;
                report["gap_pattern"] = json!(p.to_string());
                report["gap_occurrence"] = json!(scanner.gap_pattern(*p));
            }
            emit_json(&report);
            Ok(())
        }
        Command::Verify {
            map,
            source,
            target,
            depth,
            root_cap,
            fixed_point,
            fixed_point_seed,
        } => {
            let (name, m) = match (&map.morphism, &map.substitution) {
                (Some(x), _) => (x.clone(), inputs.morphism(x)?),
                (_, Some(x)) => (format!("{x}'"), inputs.substitution(x)?.hatted()),
                _ => unreachable!("clap requires one"),
            };
            let (source, target) = (inputs.spec(source)?, inputs.spec(target)?);
            let mut opts = VerifyOptions {
                depth: *depth,
                root_cap: *root_cap,
                ..Default::default()
            };
            if let Some(h) = fixed_point {
                let gen = inputs.morphism(h)?;
                for w in find_interchanges(&m)? {
                    let p = interchange_pattern(&m, &w);
                    if opts.gap_evidence.iter().any(|e| e.pattern() == p) {
                        continue;
                    }
                    if let Ok(Some(ev)) = prove_gap_pattern_absence(&source, p, Some(&gen), 12) {
                        opts.gap_evidence.push(ev);
                    }
                }
                opts.fixed_point_source = Some((h.clone(), gen, *fixed_point_seed));
            }
            let cert = verify_square_transfer(&name, &m, &source, &target, &opts)?;
            match format.unwrap_or(Format::Text) {
                Format::Json => println!("{}", cert.to_json()),
                _ => print!("{}", render_certificate(&m, &cert)),
            }
            checks(cert.complete)
        }
        Command::Count { spec, n_max } => {
            let t = count_avoiding(&inputs.spec(spec)?, *n_max);
            match format.unwrap_or(Format::Csv) {
                Format::Json => emit_json(&t.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
                _ => print!("{}", t.to_csv()),
            }
            Ok(())
        }
        Command::Forbidden { spec, max_len } => {
            let s = minimal_forbidden(&inputs.spec(spec)?, *max_len);
            match format.unwrap_or(Format::Text) {
                Format::Json => emit_json(&s),
                _ => print!("{}", render_word_list(&s.words)),
            }
            Ok(())
        }
        Command::Growth {
            forbidden,
            tol,
            max_iterations,
            alphabet,
        } => {
            let words = in_file(forbidden, parse_word_list(&read(forbidden)?, *alphabet))?;
            let k = alphabet.unwrap_or_else(|| words.first().map_or(2, Word::alphabet_size));
            let g: Growth = growth_rate(&FactorAutomaton::new(k, &words), *tol, *max_iterations);
            match format.unwrap_or(Format::Json) {
                Format::Json => emit_json(&g),
                _ => println!("{}", g.dominant_eigenvalue),
            }
            Ok(())
        }
        Command::Family {
            sub,
            outer,
            seed_word,
            target,
            divisor,
            cap,
            samples,
        } => {
            let sub = inputs.substitution(sub)?;
            let seed_word = Word::parse(seed_word, sub.source_alphabet())?;
            let rep = lower_bound_family(
                &sub,
                &inputs.morphism(outer)?,
                &seed_word,
                &inputs.spec(target)?,
                divisor.unwrap_or(u64::MAX),
                *cap,
                *samples,
                cli.seed,
            )?;
            emit_json(&rep);
            checks(rep.all_verified() && (divisor.is_none() || rep.meets_exponent))
        }
        Command::Shuffle { left, right } => {
            let (l, r) = (read_word(left)?, read_word(right)?);
            let k = l.alphabet_size().max(r.alphabet_size());
            let w = perfect_shuffle(&l.with_alphabet(k)?, &r.with_alphabet(k)?)?;
            match format.unwrap_or(Format::Text) {
                Format::Json => emit_json(&json!({ "word": w.to_string() })),
                _ => println!("{w}"),
            }
            Ok(())
        }
        Command::Scenario { name, all } => {
            let names: Vec<&str> = if *all {
                SCENARIOS.to_vec()
            } else {
                vec![name.as_deref().expect("clap requires a name")]
            };
            let reports: Vec<ScenarioReport> = names
                .par_iter()
                .map(|n| run_scenario(n))
                .collect::<wordavoid::Result<_>>()?;
            match format.unwrap_or(Format::Text) {
                Format::Json => {
                    let v: Vec<serde_json::Value> = reports
                        .iter()
                        .map(|r| serde_json::to_value(r).expect("serialisable"))
                        .collect();
                    emit_json(&v);
                }
                _ => {
                    for r in &reports {
                        print!("{}", r.digest());
                    }
                }
            }
            checks(reports.iter().all(ScenarioReport::passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !cli.quiet {
        eprintln!("# config: seed={} format={:?} {:?}", cli.seed, cli.format, cli.command);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
