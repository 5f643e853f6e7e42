use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::params::{parse_json_arg, Params};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "endoatlas", version, about = "Exact endomorphism-algebra computations with JSON reports")]
pub struct Cli {
    /// Read the command and its parameters from a JSON job file.
    #[arg(long)]
    pub job: Option<PathBuf>,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrderArg {
    Equation,
    Maximal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Galois group of an irreducible quintic.
    #[command(allow_negative_numbers = true)]
    QuinticGalois {
        /// Little-endian coefficients, e.g. "[-2,0,0,0,0,1]".
        #[arg(long)]
        coeffs: String,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Galois group of an irreducible quartic.
    #[command(allow_negative_numbers = true)]
    QuarticGalois {
        #[arg(long)]
        coeffs: String,
    },
    /// Closed-form orders of discriminant D in (D/m, m).
    QuatOrder {
        #[arg(long = "D")]
        disc: u64,
        #[arg(long)]
        m: u64,
    },
    /// Conjugation by i, j and k on the closed-form orders.
    QuatAction {
        #[arg(long = "D")]
        disc: u64,
        #[arg(long)]
        m: u64,
    },
    /// Twists of a principally polarised closed-form order.
    #[command(allow_negative_numbers = true)]
    Twists {
        #[arg(long = "D")]
        disc: u64,
        #[arg(long)]
        m: u64,
        /// Polarisation as "[a,b,c,d]"; defaults to k.
        #[arg(long)]
        mu: Option<String>,
    },
    /// Where the endomorphism field of a QM surface sits.
    QmVerdict {
        #[arg(long = "D")]
        disc: u64,
        #[arg(long)]
        m: u64,
    },
    /// Class number of Q(sqrt(d)), d < 0.
    #[command(allow_negative_numbers = true)]
    ClassNumber {
        #[arg(short = 'd', long = "d")]
        d: i64,
    },
    /// Subfields of Q(zeta_p) with their period polynomials.
    CycloSubfields {
        #[arg(short = 'p', long = "p")]
        p: u64,
    },
    /// Dedekind's criterion at 2 for Z[x]/(g).
    #[command(allow_negative_numbers = true)]
    Dedekind2 {
        #[arg(long)]
        coeffs: String,
    },
    /// Possible endomorphism algebras with cyclic 2-torsion field of degree 2g+1.
    #[command(allow_negative_numbers = true)]
    ClassifyCp {
        #[arg(short = 'g', long = "g")]
        g: u64,
        /// Imaginary quadratic base Q(sqrt(d)); the rationals if absent.
        #[arg(long = "base-d")]
        base_d: Option<i64>,
    },
    /// Decision table for the jacobian of y^2 = f(x), f quintic.
    #[command(allow_negative_numbers = true)]
    ClassifyQuintic {
        #[arg(long)]
        coeffs: String,
        /// Quadratic base Q(sqrt(d)); the rationals if absent.
        #[arg(long = "base-d")]
        base_d: Option<i64>,
        /// Defining polynomial of a candidate endomorphism field.
        #[arg(long)]
        candidate: Option<String>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Whether the endomorphism field lies in the 2-torsion field.
    #[command(allow_negative_numbers = true)]
    EndoField {
        #[arg(long)]
        coeffs: String,
        #[arg(long, value_enum, default_value = "equation")]
        order: OrderArg,
        /// Accept Galois-ness of a field of degree above 4 without proof.
        #[arg(long)]
        assert_galois: bool,
    },
    /// Replay the built-in fixture suite.
    VerifyPaper,
}

impl Command {
    /// Canonical command name and its parameters.
    pub fn into_params(self) -> Result<(&'static str, Params), CliError> {
        let mut p = Params::default();
        let name = match self {
            Command::QuinticGalois { coeffs, budget, seed } => {
                p.coeffs = Some(parse_json_arg("coeffs", &coeffs)?);
                p.budget = budget;
                p.seed = seed;
                "quintic-galois"
            }
            Command::QuarticGalois { coeffs } => {
                p.coeffs = Some(parse_json_arg("coeffs", &coeffs)?);
                "quartic-galois"
            }
            Command::QuatOrder { disc, m } => {
                (p.disc, p.m) = (Some(disc), Some(m));
                "quat-order"
            }
            Command::QuatAction { disc, m } => {
                (p.disc, p.m) = (Some(disc), Some(m));
                "quat-action"
            }
            Command::Twists { disc, m, mu } => {
                (p.disc, p.m) = (Some(disc), Some(m));
                p.mu = mu.map(|s| parse_json_arg("mu", &s)).transpose()?;
                "twists"
            }
            Command::QmVerdict { disc, m } => {
                (p.disc, p.m) = (Some(disc), Some(m));
                "qm-verdict"
            }
            Command::ClassNumber { d } => {
                p.d = Some(d);
                "class-number"
            }
            Command::CycloSubfields { p: prime } => {
                p.p = Some(prime);
                "cyclo-subfields"
            }
            Command::Dedekind2 { coeffs } => {
                p.coeffs = Some(parse_json_arg("coeffs", &coeffs)?);
                "dedekind2"
            }
            Command::ClassifyCp { g, base_d } => {
                p.g = Some(g);
                p.base_d = base_d;
                "classify-cp"
            }
            Command::ClassifyQuintic { coeffs, base_d, candidate, budget, seed } => {
                p.coeffs = Some(parse_json_arg("coeffs", &coeffs)?);
                p.base_d = base_d;
                p.candidate = candidate.map(|s| parse_json_arg("candidate", &s)).transpose()?;
                p.budget = budget;
                p.seed = seed;
                "classify-quintic"
            }
            Command::EndoField { coeffs, order, assert_galois } => {
                p.coeffs = Some(parse_json_arg("coeffs", &coeffs)?);
                p.order = Some(match order {
                    OrderArg::Equation => "equation".into(),
                    OrderArg::Maximal => "maximal".into(),
                });
                p.assert_galois = Some(assert_galois);
                "endo-field"
            }
            Command::VerifyPaper => "verify-paper",
        };
        Ok((name, p))
    }
}
