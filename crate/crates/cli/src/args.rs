use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "parahoric",
    version,
    about = "Admissible sets, central test functions and their identities for split groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissible set Adm(mu), or its double cosets at a facet.
    Adm(Common),
    /// Test function z_mu with values, normalized values and checks.
    Testfn(Common),
    /// Centrality of the Bernstein elements z_lambda.
    CenterCheck(Common),
    /// Transfer to the anisotropic inner form (--division) or to a Levi.
    Transfer(Common),
    /// Dominant weight multiplicities of V_mu, or its branching to --levi.
    Mults(Common),
    /// Every invariant for one (group, mu), one line each.
    CheckAll(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// GL, SL, PGL, Sp, GSp, or file:<path> for a JSON root datum.
    #[arg(long)]
    pub group: String,
    /// Size of the preset (GL_n etc.); Sp and GSp take n = 4.
    #[arg(long)]
    pub n: Option<usize>,
    /// Coweight as comma-separated integers, e.g. 1,0,0.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Comma-separated node indices, `iwahori` or `special`.
    #[arg(long)]
    pub facet: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Anisotropic inner form of GL_n (central division algebra).
    #[arg(long)]
    pub division: bool,
    /// Levi as comma-separated 1-based simple-root indices, or `torus`.
    #[arg(long, allow_hyphen_values = true)]
    pub levi: Option<String>,
}
