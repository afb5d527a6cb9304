use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curvespace::classify::{classify_pi1, classify_pin, regular_homotopy_equivalent};
use curvespace::flatcurves::parse_curve;
use curvespace::oracle::{verify_classification, SearchBound};
use curvespace::words::Decision;
use curvespace::{Error, StWord, Surface, SurfaceSpec};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "curvespace",
    version,
    about = "Homotopy groups of spaces of immersed curves on surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Print the surface group and the unit tangent bundle group.
    Group(SurfaceArg),
    /// Classify pi_1 of the space of curves at a curve or bundle word.
    Classify(Single),
    /// Print pi_n of the space of curves for n >= 2.
    Pin {
        #[command(flatten)]
        surface: SurfaceArg,
        /// Homotopy degree.
        #[arg(long)]
        n: u32,
    },
    /// Lift a curve file to the unit tangent bundle.
    Lift(Single),
    /// Write an element as a power of a primitive root times a fiber power.
    Decompose(Single),
    /// Decide whether two curves are regularly homotopic.
    Reghom {
        #[command(flatten)]
        surface: SurfaceArg,
        /// Two inputs: words or curve files.
        #[arg(num_args = 2, required = true)]
        inputs: Vec<String>,
    },
    /// Check a classification against brute-force enumeration.
    Verify {
        #[command(flatten)]
        single: Single,
        /// Longest base word enumerated.
        #[arg(long, default_value_t = SearchBound::default().max_word_length)]
        bound_length: usize,
        /// Largest |fiber| enumerated.
        #[arg(long, default_value_t = SearchBound::default().max_fiber)]
        bound_fiber: i64,
        /// Exponent range of witness products.
        #[arg(long, default_value_t = SearchBound::default().max_depth)]
        bound_depth: usize,
    },
}

#[derive(Args)]
struct SurfaceArg {
    /// Surface as `orientable|nonorientable:<genus>:<punctures>`.
    #[arg(long)]
    surface: String,
}

#[derive(Args)]
struct Single {
    #[command(flatten)]
    surface: SurfaceArg,
    /// A word over the bundle generators, e.g. `a1 b1^-1 f^2`.
    #[arg(long, conflicts_with_all = ["curve", "input"])]
    word: Option<String>,
    /// A curve file.
    #[arg(long, conflicts_with = "input")]
    curve: Option<String>,
    /// A curve file if the path exists, otherwise a word.
    input: Option<String>,
}

/// Invalid input; reported on stderr with exit status 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

struct Output {
    text: String,
    status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: 0 }
    }
}

fn surface(arg: &SurfaceArg) -> Result<Surface, Failure> {
    let raw = arg.surface.strip_prefix("surface=").unwrap_or(&arg.surface);
    let spec: SurfaceSpec = raw.parse()?;
    Ok(Surface::new(spec))
}

enum Input {
    Word(String),
    Curve(String),
}

impl Input {
    fn resolve(raw: &str) -> Input {
        if Path::new(raw).is_file() {
            Input::Curve(raw.to_string())
        } else {
            Input::Word(raw.to_string())
        }
    }

    fn label(&self) -> &str {
        match self {
            Input::Word(w) | Input::Curve(w) => w,
        }
    }

    fn lift(&self, s: &Surface) -> Result<StWord, Failure> {
        match self {
            Input::Word(w) => Ok(s.parse_st_word(w)?),
            Input::Curve(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| Failure(format!("{path}: {e}")))?;
                let curve = parse_curve(&text).map_err(|e| Failure(format!("{path}: {e}")))?;
                curve.lift(s).map_err(|e| Failure(format!("{path}: {e}")))
            }
        }
    }
}

impl Single {
    fn input(&self) -> Result<Input, Failure> {
        match (&self.word, &self.curve, &self.input) {
            (Some(w), _, _) => Ok(Input::Word(w.clone())),
            (_, Some(c), _) => Ok(Input::Curve(c.clone())),
            (_, _, Some(raw)) => Ok(Input::resolve(raw)),
            _ => Err(Failure("expected a word or a curve file".into())),
        }
    }
}

fn decision_status(d: Decision) -> u8 {
    match d {
        Decision::Yes => 0,
        Decision::No => EXIT_NEGATIVE,
        Decision::Undecided => EXIT_UNDECIDED,
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let structured = cli.format == Format::Structured;
    match &cli.command {
        Command::Group(arg) => {
            let s = surface(arg)?;
            let p = s.presentation();
            let st = s.st_presentation();
            let text = if structured {
                format!(
                    "surface={}\neuler_characteristic={}\npresentation={p}\nst_presentation={st}\nabelianization={}\nst_abelianization={}\n",
                    s.spec(),
                    s.euler_characteristic(),
                    p.abelianization(),
                    st.abelianization()
                )
            } else {
                format!(
                    "surface: {}\neuler characteristic: {}\npi_1(F) = {p}\npi_1(ST F) = {st}\nH_1(F) = {}\nH_1(ST F) = {}\n",
                    s.spec(),
                    s.euler_characteristic(),
                    p.abelianization(),
                    st.abelianization()
                )
            };
            Ok(Output::ok(text))
        }
        Command::Classify(single) => {
            let s = surface(&single.surface)?;
            let input = single.input()?;
            let xi = input.lift(&s)?;
            let mut report = classify_pi1(&s, &xi)?;
            report.input = input.label().to_string();
            Ok(Output::ok(if structured {
                report.render_structured()
            } else {
                report.render_text()
            }))
        }
        Command::Pin { surface: arg, n } => {
            let s = surface(arg)?;
            let g = classify_pin(s.spec(), *n)?;
            Ok(Output::ok(if structured {
                format!("kind={}\ngroup={}\n", g.kind, g.summary())
            } else {
                format!("pi_{n} = {} ({})\n", g.summary(), g.kind)
            }))
        }
        Command::Lift(single) => {
            let s = surface(&single.surface)?;
            let xi = single.input()?.lift(&s)?;
            Ok(Output::ok(if structured {
                format!("lift={xi}\nbase={}\nfiber={}\n", xi.base(), xi.fiber())
            } else {
                format!("{xi}\n")
            }))
        }
        Command::Decompose(single) => {
            let s = surface(&single.surface)?;
            let xi = single.input()?.lift(&s)?;
            let d = s.decompose(&xi)?;
            Ok(Output::ok(if structured {
                format!("root={}\nk={}\nl={}\n", d.root_lift, d.exponent, d.fiber)
            } else {
                format!("{xi} = ({})^{} f^{}\n", d.root_lift, d.exponent, d.fiber)
            }))
        }
        Command::Reghom {
            surface: arg,
            inputs,
        } => {
            let s = surface(arg)?;
            let u = Input::resolve(&inputs[0]).lift(&s)?;
            let v = Input::resolve(&inputs[1]).lift(&s)?;
            let d = regular_homotopy_equivalent(&s, &u, &v)?;
            let text = if structured {
                format!("left={u}\nright={v}\nequivalent={d}\n")
            } else {
                let verdict = match d {
                    Decision::Yes => "regularly homotopic",
                    Decision::No => "not regularly homotopic",
                    Decision::Undecided => "undecided within the search bound",
                };
                format!("{u} vs {v}: {verdict}\n")
            };
            Ok(Output {
                text,
                status: decision_status(d),
            })
        }
        Command::Verify {
            single,
            bound_length,
            bound_fiber,
            bound_depth,
        } => {
            let s = surface(&single.surface)?;
            let bound = SearchBound::new(*bound_length, *bound_fiber, *bound_depth)?;
            let xi = single.input()?.lift(&s)?;
            let v = verify_classification(&s, &xi, &bound)?;
            let mut text = String::new();
            if structured {
                let _ = writeln!(text, "case={}", v.report.case);
                let _ = writeln!(text, "kind={}", v.report.group.kind);
                let _ = writeln!(text, "centralizer={}", v.centralizer_size);
                let _ = writeln!(text, "verdict={}", if v.passed() { "pass" } else { "fail" });
                if let Some(c) = &v.counterexample {
                    let _ = writeln!(text, "counterexample={}", c.element);
                    let _ = writeln!(text, "reason={}", c.reason);
                }
            } else {
                text = v.to_string();
            }
            Ok(Output {
                text,
                status: if v.passed() { 0 } else { EXIT_NEGATIVE },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
