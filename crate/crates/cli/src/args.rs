use std::path::PathBuf;

use blockade_core::extcalc::Dim;
use blockade_core::{TypeLetter, Weight};
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "blockade", version, about = "Ext¹ and block computations for twisted current algebras")]
pub struct Cli {
    /// Print human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Evaluate batches on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// Cartan type letter, A to G.
    #[arg(value_name = "TYPE")]
    pub letter: TypeLetter,
    #[arg(value_name = "RANK")]
    pub rank: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Positive roots, Cartan matrix and P/Q.
    Roots {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Weyl dimension of L(λ).
    Dim {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        lam: Weight,
    },
    /// Decomposition of L(λ) ⊗ L(μ).
    Tensor {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        lam: Weight,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        mu: Weight,
    },
    /// Weight multiplicities of L(λ).
    Freudenthal {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        lam: Weight,
        /// Only list dominant weights.
        #[arg(long)]
        dominant: bool,
    },
    /// Multiplicity of the adjoint module in L(λ)* ⊗ L(μ).
    Prv {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        lam: Weight,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        mu: Weight,
        /// Also compute it from the full tensor decomposition.
        #[arg(long)]
        oracle: bool,
    },
    /// Ext¹ between two modules, or the matrix over a list of modules.
    Ext {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_name = "FILE")]
        orbits: PathBuf,
        #[command(flatten)]
        pair: PairOrBatch,
    },
    /// Partition a list of modules into blocks.
    Blocks {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_name = "FILE")]
        orbits: PathBuf,
        #[arg(long, value_name = "FILE")]
        modules: PathBuf,
    },
    /// Search for an Ext-linkage chain between two modules.
    Chain {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_name = "FILE")]
        orbits: PathBuf,
        #[arg(long, value_name = "FILE")]
        e: PathBuf,
        #[arg(long, value_name = "FILE")]
        f: PathBuf,
        /// Largest weight coordinate allowed along the chain.
        #[arg(long, default_value_t = 6)]
        bound: i64,
        /// Extra points whose orbits join the search window.
        #[arg(long = "window", value_name = "POINT")]
        window: Vec<String>,
    },
    /// Block of a tensor product of Margaux-algebra evaluation modules.
    Margaux {
        #[arg(long, value_name = "FILE")]
        modules: PathBuf,
    },
    /// Extension rules over abelian, reductive and direct-sum algebras.
    Extcalc {
        #[command(subcommand)]
        rule: ExtcalcCommand,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
pub struct PairOrBatch {
    #[arg(long, value_name = "FILE", requires = "f", conflicts_with = "modules")]
    pub e: Option<PathBuf>,
    #[arg(long, value_name = "FILE", requires = "e")]
    pub f: Option<PathBuf>,
    /// A JSON list of module descriptors.
    #[arg(long, value_name = "FILE")]
    pub modules: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ExtcalcCommand {
    /// Ext¹(k_λ, k_μ) over an abelian algebra.
    Abelian {
        #[arg(long, value_parser = parse_dim)]
        dim_z: Dim,
        #[arg(long)]
        lam: String,
        #[arg(long)]
        mu: String,
    },
    /// Ext¹ over a direct sum from the factor data.
    DirectSum {
        #[arg(long)]
        first_iso: bool,
        #[arg(long)]
        second_iso: bool,
        #[arg(long)]
        ext_first: u64,
        #[arg(long)]
        ext_second: u64,
    },
    /// Ext¹ between simple modules of centre ⊕ semisimple.
    Reductive {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        dim_z: u64,
        #[arg(long)]
        a_central: String,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        a_weight: Option<Weight>,
        #[arg(long)]
        b_central: String,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        b_weight: Option<Weight>,
    },
    /// Ext¹ between the trivial module and a simple module.
    Trivial {
        #[arg(long)]
        dim_z: u64,
        #[arg(long)]
        nontrivial: bool,
    },
    /// Ext¹ between simple modules carrying non-evaluation labels.
    General {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_name = "FILE")]
        orbits: PathBuf,
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        b: PathBuf,
    },
    /// Combine factor Ext dimensions of modules agreeing on every orbit.
    Case3 {
        /// Comma-separated factor dimensions.
        #[arg(long, value_delimiter = ',', required = true)]
        ext: Vec<u64>,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        dim_quot: u64,
    },
}

pub fn parse_weight(s: &str) -> Result<Weight, String> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(Weight::new(vec![]));
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("`{}`: {e}", t.trim())))
        .collect::<Result<Vec<_>, _>>()
        .map(Weight::new)
}

fn parse_dim(s: &str) -> Result<Dim, String> {
    s.parse().map_err(|e: blockade_core::Error| e.to_string())
}
