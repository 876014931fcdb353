use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcskit::ms::ObjectPolicy;
use qcskit::Canonical;

/// Audits for quantum coherent spaces, Choi morphisms and mixed-state 2d TQFTs.
///
/// File arguments accept a path or inline JSON (anything starting with `{` or `[`).
/// Exit codes: 0 all checks pass, 1 a check fails or a point is outside,
/// 2 input error, 3 undecided within the cutting-plane budget.
#[derive(Debug, Parser)]
#[command(name = "qcskit", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Absolute tolerance for pairings and residuals.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for every sampled audit.
    #[arg(long, global = true, env = "QCSKIT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled points per audit.
    #[arg(long, global = true, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polarity and membership oracles.
    #[command(subcommand)]
    Qcs(QcsCmd),
    /// Morphisms given as Choi matrices.
    #[command(subcommand)]
    Choi(ChoiCmd),
    /// Commutative Frobenius algebras.
    #[command(subcommand)]
    Frob(FrobCmd),
    /// Bordism terms.
    #[command(subcommand)]
    Bord(BordCmd),
    /// Mixed-state TQFTs.
    #[command(subcommand)]
    Ms(MsCmd),
}

impl Command {
    pub fn name(&self) -> String {
        let (group, sub) = match self {
            Command::Qcs(c) => ("qcs", c.name()),
            Command::Choi(c) => ("choi", c.name()),
            Command::Frob(c) => ("frob", c.name()),
            Command::Bord(c) => ("bord", c.name()),
            Command::Ms(c) => ("ms", c.name()),
        };
        format!("{group} {sub}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetArg {
    D,
    P,
}

impl From<SetArg> for Canonical {
    fn from(s: SetArg) -> Canonical {
        match s {
            SetArg::D => Canonical::D,
            SetArg::P => Canonical::P,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum QcsCmd {
    /// Whether 0 ≤ tr(fg) ≤ 1.
    PolarPair {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Whether g is polar to every generator.
    PolarMember {
        #[arg(long)]
        g: String,
        /// JSON array of Hermitian matrices.
        #[arg(long)]
        gens: String,
    },
    /// Whether f lies in the double polar of the generators.
    BipolarMember {
        #[arg(long)]
        f: String,
        #[arg(long)]
        gens: String,
    },
    /// Membership in D(n) or P(n).
    Canonical {
        #[arg(long)]
        f: String,
        #[arg(long, value_enum)]
        set: SetArg,
    },
    /// Sampled closure laws of the double polar.
    Suite {
        #[arg(long)]
        gens: String,
    },
    /// Membership in the tensor product of two spaces.
    TensorMember {
        #[arg(long)]
        f: String,
        /// Space description of the first factor.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Cutting-plane iterations before giving up.
        #[arg(long, default_value_t = 50)]
        budget: usize,
    },
    /// Candidate tensor units on the one-dimensional carrier.
    UnitAudit,
}

impl QcsCmd {
    fn name(&self) -> &'static str {
        match self {
            QcsCmd::PolarPair { .. } => "polar-pair",
            QcsCmd::PolarMember { .. } => "polar-member",
            QcsCmd::BipolarMember { .. } => "bipolar-member",
            QcsCmd::Canonical { .. } => "canonical",
            QcsCmd::Suite { .. } => "suite",
            QcsCmd::TensorMember { .. } => "tensor-member",
            QcsCmd::UnitAudit => "unit-audit",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum ChoiCmd {
    /// Image of a Hermitian matrix.
    Apply {
        #[arg(long)]
        morphism: String,
        #[arg(long)]
        input: String,
    },
    /// `second ∘ first`.
    Compose {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
    /// Tensor product of two morphisms.
    Tensor {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Sampled check that the morphism maps its domain into its codomain.
    HomAudit {
        #[arg(long)]
        morphism: String,
    },
}

impl ChoiCmd {
    fn name(&self) -> &'static str {
        match self {
            ChoiCmd::Apply { .. } => "apply",
            ChoiCmd::Compose { .. } => "compose",
            ChoiCmd::Tensor { .. } => "tensor",
            ChoiCmd::HomAudit { .. } => "hom-audit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorArg {
    Cap,
    Cup,
    Mul,
    Comul,
    Id,
    Swap,
}

impl From<GeneratorArg> for qcskit::Generator {
    fn from(g: GeneratorArg) -> Self {
        use qcskit::Generator as G;
        match g {
            GeneratorArg::Cap => G::Cap,
            GeneratorArg::Cup => G::Cup,
            GeneratorArg::Mul => G::Mul,
            GeneratorArg::Comul => G::Comul,
            GeneratorArg::Id => G::Id,
            GeneratorArg::Swap => G::Swap,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum FrobCmd {
    /// Residuals of every algebra law.
    Validate {
        #[arg(long)]
        algebra: String,
    },
    /// Matrix of one generating bordism.
    Gen {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum)]
        name: GeneratorArg,
    },
    /// Closed-surface invariant of the given genus.
    Invariant {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        genus: usize,
    },
}

impl FrobCmd {
    fn name(&self) -> &'static str {
        match self {
            FrobCmd::Validate { .. } => "validate",
            FrobCmd::Gen { .. } => "gen",
            FrobCmd::Invariant { .. } => "invariant",
        }
    }
}

/// A term given inline or read from a file.
#[derive(Debug, Args)]
pub struct TermArg {
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    pub term: Option<String>,
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum BordCmd {
    /// Parse and pretty-print.
    Parse(TermArg),
    /// Incoming and outgoing circle counts.
    Type(TermArg),
    /// Euler characteristic.
    Euler(TermArg),
    /// Matrix under the TQFT of an algebra.
    Eval {
        #[command(flatten)]
        term: TermArg,
        #[arg(long)]
        algebra: String,
    },
}

impl BordCmd {
    fn name(&self) -> &'static str {
        match self {
            BordCmd::Parse(_) => "parse",
            BordCmd::Type(_) => "type",
            BordCmd::Euler(_) => "euler",
            BordCmd::Eval { .. } => "eval",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    TensorOfComponents,
    CanonicalDOfProduct,
}

impl From<PolicyArg> for ObjectPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::TensorOfComponents => ObjectPolicy::TensorOfComponents,
            PolicyArg::CanonicalDOfProduct => ObjectPolicy::CanonicalDOfProduct,
        }
    }
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    #[arg(long)]
    pub algebra: String,
    /// Euler scale: a bordism of Euler characteristic χ is weighted by λ^χ.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, value_enum, default_value_t = PolicyArg::TensorOfComponents)]
    pub policy: PolicyArg,
}

#[derive(Debug, Subcommand)]
pub enum MsCmd {
    /// Generator Choi matrices and their objects.
    Build(TheoryArgs),
    /// Scales λ that make every generator norm-contractive.
    ScaleAudit {
        #[arg(long)]
        algebra: String,
    },
    /// Composition, monoidal, identity and relation checks.
    Axioms(TheoryArgs),
    /// Sampled morphism check for every generator.
    HomAudit(TheoryArgs),
    /// Trace out an invertible second factor with scalar μ.
    TraceOut {
        #[arg(long)]
        algebra: String,
        /// Real part of μ.
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        /// Imaginary part of μ.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        mu_im: f64,
    },
    /// D(V₁)⊗D(V₂) versus D(V₁⊗V₂) with the singlet.
    TensorGap {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

impl MsCmd {
    fn name(&self) -> &'static str {
        match self {
            MsCmd::Build(_) => "build",
            MsCmd::ScaleAudit { .. } => "scale-audit",
            MsCmd::Axioms(_) => "axioms",
            MsCmd::HomAudit(_) => "hom-audit",
            MsCmd::TraceOut { .. } => "trace-out",
            MsCmd::TensorGap { .. } => "tensor-gap",
        }
    }
}
