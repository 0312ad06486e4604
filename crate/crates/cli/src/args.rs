use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "koszulab", version, about = "Koszul towers, local cohomology and completion checks over polynomial rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Ring, e.g. `F32003[x,y]`, `Q[x,y]:lex` or `F101[x,y,z]/(x*z, y*z)`.
    #[arg(long)]
    pub ring: String,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    pub json: bool,
}

fn positive(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Gröbner basis of an ideal.
    Gb {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
    },
    /// Normal form of a polynomial modulo an ideal.
    Nf {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Colon ideal `(I : f^k)`, or the saturation with `--power inf`.
    Quotient {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "inf")]
        power: String,
    },
    /// Free resolution of a module.
    Resolve {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        /// Number of maps to compute; defaults to one more than the number of variables.
        #[arg(long, value_parser = positive)]
        length: Option<u32>,
    },
    /// `Ext^i(M, N)` as a presented module.
    Ext {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[arg(long, default_value = "R")]
        into: String,
        #[arg(long)]
        index: usize,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Hilbert function of a graded module over a window.
    Hilbert {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// The complex `K(t^r) ⊗ M` and its cohomology.
    Koszul {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: String,
        #[arg(long, default_value = "R")]
        module: String,
        #[arg(long, short = 'r', default_value_t = 1, value_parser = positive)]
        power: u32,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Search for a proregularity certificate.
    Proreg {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: String,
        #[arg(long, value_parser = positive)]
        rmax: u32,
        /// Defaults to `rmax + 4`.
        #[arg(long, value_parser = positive)]
        smax: Option<u32>,
    },
    /// Search for an essential-nullity certificate of `H^{-i} Hom(K(t^r), P)`.
    Essnull {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: String,
        #[arg(long, default_value = "R")]
        module: String,
        #[arg(long, default_value_t = 1)]
        index: i64,
        #[arg(long, value_parser = positive)]
        rmax: u32,
        /// Defaults to `rmax + 4`.
        #[arg(long, value_parser = positive)]
        smax: Option<u32>,
    },
    /// Graded local cohomology `H^i_t(M)` as a colimit table.
    Localcoh {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        /// Defaults to the variables.
        #[arg(long)]
        seq: Option<String>,
        #[arg(long)]
        index: usize,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, value_parser = positive)]
        stage_max: u32,
        /// `koszul-colim` or `ext-colim`.
        #[arg(long, default_value = "koszul-colim")]
        method: String,
    },
    /// The adic tower `M/I^n M`.
    Complete {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "R")]
        module: String,
        #[arg(long)]
        ideal: String,
        #[arg(long, value_parser = positive)]
        nmax: u32,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// The tower `Hom(K(t^r), P)` against the adic completion of a free `P`.
    Lochom {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: String,
        #[arg(long, default_value = "R")]
        module: String,
        #[arg(long, value_parser = positive)]
        rmax: u32,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// The adjunction `Hom(K(t^r) ⊗ E, F) → Hom(E, Hom(K(t^r), F))` for
    /// `E` the presentation complex of `--module` and `F = --into`.
    Gmadj {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        seq: String,
        #[arg(long, default_value = "R")]
        module: String,
        #[arg(long, default_value = "R")]
        into: String,
        #[arg(long, default_value_t = 2, value_parser = positive)]
        rmax: u32,
    },
    /// Graded local duality over the polynomial ring.
    Duality {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        module: String,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, value_parser = positive)]
        stage_max: u32,
    },
    /// Recheck a proreg or essnull certificate without searching.
    Verify {
        /// Certificate file, or `-` for standard input.
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb { .. } => "gb",
            Command::Nf { .. } => "nf",
            Command::Quotient { .. } => "quotient",
            Command::Resolve { .. } => "resolve",
            Command::Ext { .. } => "ext",
            Command::Hilbert { .. } => "hilbert",
            Command::Koszul { .. } => "koszul",
            Command::Proreg { .. } => "proreg",
            Command::Essnull { .. } => "essnull",
            Command::Localcoh { .. } => "localcoh",
            Command::Complete { .. } => "complete",
            Command::Lochom { .. } => "lochom",
            Command::Gmadj { .. } => "gmadj",
            Command::Duality { .. } => "duality",
            Command::Verify { .. } => "verify",
        }
    }

    pub fn json(&self) -> bool {
        match self {
            Command::Gb { common, .. }
            | Command::Nf { common, .. }
            | Command::Quotient { common, .. }
            | Command::Resolve { common, .. }
            | Command::Ext { common, .. }
            | Command::Hilbert { common, .. }
            | Command::Koszul { common, .. }
            | Command::Proreg { common, .. }
            | Command::Essnull { common, .. }
            | Command::Localcoh { common, .. }
            | Command::Complete { common, .. }
            | Command::Lochom { common, .. }
            | Command::Gmadj { common, .. }
            | Command::Duality { common, .. } => common.json,
            Command::Verify { json, .. } => *json,
        }
    }
}
