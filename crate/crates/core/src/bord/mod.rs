//! A term language for (1+1)-dimensional bordisms.
//!
//! ```text
//! term   := factor { ";" factor }
//! factor := atom { "*" atom }
//! atom   := "cap" | "cup" | "mul" | "comul" | "id" | "swap" | "(" term ")"
//! ```
//!
//! `a ; b` glues the outgoing circles of `a` to the incoming circles of `b`, so
//! terms read left to right the way bordisms are drawn, and evaluate to the
//! matrix product `M_b · M_a`. `a * b` is disjoint union. Both operators are
//! left-associative and `*` binds tighter.
//!
//! Terms are stored as a post-order arena: every child precedes its parent and
//! the root is last. Folds, type checking and drop are therefore iterative, so
//! long chains near the input size limit cannot exhaust the stack.

mod parse;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::frobenius::FrobeniusAlgebra;
use crate::matrix::CMat;

pub use parse::{parse, MAX_INPUT_BYTES, MAX_NESTING};

/// Largest matrix side `k^circles` that [`evaluate`] will build.
pub const MAX_EVAL_DIM: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BordError {
    #[error("input is {len} bytes, limit is {limit}")]
    TooLarge { len: usize, limit: usize },
    #[error("{line}:{col}: unexpected character {found:?}")]
    Lexical { line: usize, col: usize, found: char },
    #[error("{line}:{col}: expected {}, found {found}", expected.join(" | "))]
    Syntax {
        line: usize,
        col: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("{line}:{col}: parentheses nested deeper than {limit}")]
    TooDeep { line: usize, col: usize, limit: usize },
    #[error("{line}:{col}: cannot glue {out} outgoing circle(s) to {inp} incoming at {path}")]
    GluingMismatch {
        path: String,
        line: usize,
        col: usize,
        out: usize,
        inp: usize,
    },
    #[error("evaluation needs a {dim}-dimensional space, limit is {cap}")]
    EvaluationTooLarge { dim: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Cap,
    Cup,
    Mul,
    Comul,
    Id,
    Swap,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Cap,
        Generator::Cup,
        Generator::Mul,
        Generator::Comul,
        Generator::Id,
        Generator::Swap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Cap => "cap",
            Generator::Cup => "cup",
            Generator::Mul => "mul",
            Generator::Comul => "comul",
            Generator::Id => "id",
            Generator::Swap => "swap",
        }
    }

    pub fn from_name(s: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.name() == s)
    }

    /// Incoming and outgoing circle counts.
    pub fn bord_type(self) -> BordType {
        let (inputs, outputs) = match self {
            Generator::Cap => (0, 1),
            Generator::Cup => (1, 0),
            Generator::Mul => (2, 1),
            Generator::Comul => (1, 2),
            Generator::Id => (1, 1),
            Generator::Swap => (2, 2),
        };
        BordType { inputs, outputs }
    }

    /// Euler characteristic: disks count +1, pairs of pants −1, cylinders 0.
    pub fn euler(self) -> i64 {
        match self {
            Generator::Cap | Generator::Cup => 1,
            Generator::Mul | Generator::Comul => -1,
            Generator::Id | Generator::Swap => 0,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BordType {
    pub inputs: usize,
    pub outputs: usize,
}

impl BordType {
    pub fn is_closed(self) -> bool {
        self.inputs == 0 && self.outputs == 0
    }
}

impl fmt::Display for BordType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}", self.inputs, self.outputs)
    }
}

/// Source position, 1-based. Built terms carry `0:0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Atom(Generator),
    Seq(usize, usize),
    Par(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kind {
    Atom,
    Seq,
    Par,
}

/// A bordism term. Equality is structural and ignores source positions.
#[derive(Debug, Clone)]
pub struct Term {
    nodes: Vec<Node>,
    pos: Vec<Pos>,
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.nodes.len() == other.nodes.len()
            && self.nodes.iter().zip(&other.nodes).all(|(a, b)| match (a, b) {
                (Node::Atom(x), Node::Atom(y)) => x == y,
                (Node::Seq(a1, a2), Node::Seq(b1, b2)) | (Node::Par(a1, a2), Node::Par(b1, b2)) => a1 == b1 && a2 == b2,
                _ => false,
            })
    }
}

impl Eq for Term {}

impl Term {
    pub fn atom(g: Generator) -> Term {
        Term::atom_at(g, Pos::default())
    }

    pub(crate) fn atom_at(g: Generator, pos: Pos) -> Term {
        Term {
            nodes: vec![Node::Atom(g)],
            pos: vec![pos],
        }
    }

    /// `first ; then`.
    pub fn seq(first: Term, then: Term) -> Term {
        Term::join(first, then, Kind::Seq, Pos::default())
    }

    /// `left * right`.
    pub fn par(left: Term, right: Term) -> Term {
        Term::join(left, right, Kind::Par, Pos::default())
    }

    pub(crate) fn join(mut a: Term, b: Term, kind: Kind, pos: Pos) -> Term {
        let off = a.nodes.len();
        let ra = off - 1;
        a.nodes.extend(b.nodes.into_iter().map(|n| match n {
            Node::Atom(g) => Node::Atom(g),
            Node::Seq(l, r) => Node::Seq(l + off, r + off),
            Node::Par(l, r) => Node::Par(l + off, r + off),
        }));
        a.pos.extend(b.pos);
        let rb = a.nodes.len() - 1;
        a.nodes.push(match kind {
            Kind::Seq => Node::Seq(ra, rb),
            Kind::Par => Node::Par(ra, rb),
            Kind::Atom => unreachable!("atoms have no children"),
        });
        a.pos.push(pos);
        a
    }

    /// `first ; then ; ...` over a nonempty list, left-associated.
    pub fn chain(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::seq)
    }

    fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    fn kind(&self, i: usize) -> Kind {
        match self.nodes[i] {
            Node::Atom(_) => Kind::Atom,
            Node::Seq(..) => Kind::Seq,
            Node::Par(..) => Kind::Par,
        }
    }

    /// Number of atoms.
    pub fn size(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Atom(_))).count()
    }

    pub fn atoms(&self) -> impl Iterator<Item = Generator> + '_ {
        self.nodes.iter().filter_map(|n| match n {
            Node::Atom(g) => Some(*g),
            _ => None,
        })
    }

    /// Evaluates the term bottom-up under `alg`.
    pub fn fold<A: TermAlgebra>(&self, alg: &A) -> Result<A::Value, A::Error> {
        let mut vals: Vec<Option<A::Value>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match *node {
                Node::Atom(g) => alg.atom(g)?,
                Node::Seq(l, r) => {
                    let (a, b) = (take(&mut vals, l), take(&mut vals, r));
                    alg.seq(a, b)?
                }
                Node::Par(l, r) => {
                    let (a, b) = (take(&mut vals, l), take(&mut vals, r));
                    alg.par(a, b)?
                }
            };
            vals.push(Some(v));
        }
        Ok(take(&mut vals, self.root()))
    }

    /// Path from the root to node `i`, e.g. `root.left.right`.
    fn path_to(&self, target: usize) -> String {
        let mut parent = vec![usize::MAX; self.nodes.len()];
        let mut side = vec![""; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            if let Node::Seq(l, r) | Node::Par(l, r) = *n {
                parent[l] = i;
                side[l] = "left";
                parent[r] = i;
                side[r] = "right";
            }
        }
        let mut steps = Vec::new();
        let mut i = target;
        while parent[i] != usize::MAX {
            steps.push(side[i]);
            i = parent[i];
        }
        steps.push("root");
        steps.reverse();
        steps.join(".")
    }
}

fn take<T>(vals: &mut [Option<T>], i: usize) -> T {
    vals[i].take().expect("each child is consumed once")
}

impl FromStr for Term {
    type Err = BordError;

    fn from_str(s: &str) -> Result<Term, BordError> {
        parse(s)
    }
}

/// Interpretation of the term constructors, for [`Term::fold`].
pub trait TermAlgebra {
    type Value;
    type Error;
    fn atom(&self, g: Generator) -> Result<Self::Value, Self::Error>;
    /// `first ; then`.
    fn seq(&self, first: Self::Value, then: Self::Value) -> Result<Self::Value, Self::Error>;
    fn par(&self, left: Self::Value, right: Self::Value) -> Result<Self::Value, Self::Error>;
}

/// Incoming and outgoing circle counts, or the first (post-order) gluing
/// mismatch with its path and the position of its `;`.
pub fn typecheck(term: &Term) -> Result<BordType, BordError> {
    let mut types: Vec<BordType> = Vec::with_capacity(term.nodes.len());
    for (i, node) in term.nodes.iter().enumerate() {
        let t = match *node {
            Node::Atom(g) => g.bord_type(),
            Node::Seq(l, r) => {
                let (a, b) = (types[l], types[r]);
                if a.outputs != b.inputs {
                    let p = term.pos[i];
                    return Err(BordError::GluingMismatch {
                        path: term.path_to(i),
                        line: p.line,
                        col: p.col,
                        out: a.outputs,
                        inp: b.inputs,
                    });
                }
                BordType {
                    inputs: a.inputs,
                    outputs: b.outputs,
                }
            }
            Node::Par(l, r) => BordType {
                inputs: types[l].inputs + types[r].inputs,
                outputs: types[l].outputs + types[r].outputs,
            },
        };
        types.push(t);
    }
    Ok(types[term.root()])
}

/// Sum of the atom Euler characteristics. For a closed connected term this
/// is `2 − 2g`.
pub fn euler_char(term: &Term) -> i64 {
    term.atoms().map(Generator::euler).sum()
}

struct MatrixEval<'a> {
    alg: &'a FrobeniusAlgebra,
}

impl TermAlgebra for MatrixEval<'_> {
    type Value = CMat;
    type Error = BordError;

    fn atom(&self, g: Generator) -> Result<CMat, BordError> {
        Ok(self.alg.generator(g))
    }

    fn seq(&self, first: CMat, then: CMat) -> Result<CMat, BordError> {
        Ok(then.matmul(&first))
    }

    fn par(&self, left: CMat, right: CMat) -> Result<CMat, BordError> {
        let dim = left.rows().max(left.cols()) * right.rows().max(right.cols());
        if dim > MAX_EVAL_DIM {
            return Err(BordError::EvaluationTooLarge { dim, cap: MAX_EVAL_DIM });
        }
        Ok(left.kron(&right))
    }
}

/// Matrix of shape `k^out × k^in` assigned to `term` by the TQFT of `alg`.
pub fn evaluate(term: &Term, alg: &FrobeniusAlgebra) -> Result<CMat, BordError> {
    typecheck(term)?;
    term.fold(&MatrixEval { alg })
}

/// `cap ; (comul ; mul)^g ; cup`, the closed surface of genus `g`.
pub fn genus_term(g: usize) -> Term {
    let mut t = Term::atom(Generator::Cap);
    for _ in 0..g {
        t = Term::seq(t, Term::atom(Generator::Comul));
        t = Term::seq(t, Term::atom(Generator::Mul));
    }
    Term::seq(t, Term::atom(Generator::Cup))
}

/// A named pair of terms that every commutative Frobenius algebra identifies.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: Term,
    pub rhs: Term,
}

const RELATIONS: [(&str, &str, &str); 11] = [
    ("associativity", "(mul * id) ; mul", "(id * mul) ; mul"),
    ("left unit", "(cap * id) ; mul", "id"),
    ("right unit", "(id * cap) ; mul", "id"),
    ("coassociativity", "comul ; (comul * id)", "comul ; (id * comul)"),
    ("left counit", "comul ; (cup * id)", "id"),
    ("right counit", "comul ; (id * cup)", "id"),
    ("frobenius (left)", "(id * comul) ; (mul * id)", "mul ; comul"),
    ("frobenius (right)", "(comul * id) ; (id * mul)", "mul ; comul"),
    ("commutativity", "swap ; mul", "mul"),
    ("cocommutativity", "comul ; swap", "comul"),
    ("swap involution", "swap ; swap", "id * id"),
];

/// The defining relations of commutative Frobenius algebras.
pub fn relation_pairs() -> Vec<Relation> {
    RELATIONS
        .iter()
        .map(|&(name, l, r)| Relation {
            name,
            lhs: parse(l).expect("relation terms parse"),
            rhs: parse(r).expect("relation terms parse"),
        })
        .collect()
}

impl fmt::Display for Term {
    /// Minimal parenthesisation: prints a term that parses back to itself.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out: Vec<Option<String>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let s = match *node {
                Node::Atom(g) => g.name().to_string(),
                Node::Seq(l, r) => {
                    let mut s = take(&mut out, l);
                    s.push_str(" ; ");
                    push_wrapped(&mut s, &take(&mut out, r), self.kind(r) == Kind::Seq);
                    s
                }
                Node::Par(l, r) => {
                    let mut s = String::new();
                    push_wrapped(&mut s, &take(&mut out, l), self.kind(l) == Kind::Seq);
                    s.push_str(" * ");
                    push_wrapped(&mut s, &take(&mut out, r), self.kind(r) != Kind::Atom);
                    s
                }
            };
            out.push(Some(s));
        }
        f.write_str(&take(&mut out, self.root()))
    }
}

fn push_wrapped(s: &mut String, inner: &str, wrap: bool) {
    if wrap {
        s.push('(');
        s.push_str(inner);
        s.push(')');
    } else {
        s.push_str(inner);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::AlgebraData;
    use rand::Rng;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    #[test]
    fn types_and_euler() {
        let cases = [
            ("cap ; cup", (0, 0), 2),
            ("cap ; comul ; mul ; cup", (0, 0), 0),
            ("cap ; comul ; mul ; comul ; mul ; cup", (0, 0), -2),
            ("id * id", (2, 2), 0),
            ("comul ; swap ; mul", (1, 1), -2),
            ("(cap * id) ; mul", (1, 1), 0),
        ];
        for (s, (i, o), chi) in cases {
            let term = t(s);
            assert_eq!(typecheck(&term).unwrap(), BordType { inputs: i, outputs: o }, "{s}");
            assert_eq!(euler_char(&term), chi, "{s}");
        }
    }

    #[test]
    fn mismatch_is_reported_at_the_semicolon() {
        match typecheck(&t("mul ; cap")) {
            Err(BordError::GluingMismatch { path, line, col, out, inp }) => {
                assert_eq!((line, col, out, inp), (1, 5, 1, 0));
                assert_eq!(path, "root");
            }
            other => panic!("{other:?}"),
        }
        match typecheck(&t("id * (mul ; cap)")) {
            Err(BordError::GluingMismatch { path, col, .. }) => {
                assert_eq!(path, "root.right");
                assert_eq!(col, 11);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn genus_terms() {
        for g in 0..5 {
            let term = genus_term(g);
            assert!(typecheck(&term).unwrap().is_closed());
            assert_eq!(euler_char(&term), 2 - 2 * g as i64);
            assert_eq!(t(&term.to_string()), term);
        }
        assert_eq!(genus_term(1).to_string(), "cap ; comul ; mul ; cup");
    }

    #[test]
    fn relations_hold_and_preserve_euler() {
        let algebras = [
            AlgebraData::ground_field(),
            AlgebraData::z2_group_algebra(),
            AlgebraData::semisimple(&[2.0, 3.0]).unwrap(),
            crate::frobenius::random_semisimple(3, &mut crate::random::rng(5)).unwrap().0,
        ];
        let rels = relation_pairs();
        assert_eq!(rels.len(), 11);
        for data in algebras {
            let a = FrobeniusAlgebra::new(data).unwrap();
            for rel in &rels {
                assert_eq!(typecheck(&rel.lhs).unwrap(), typecheck(&rel.rhs).unwrap(), "{}", rel.name);
                assert_eq!(euler_char(&rel.lhs), euler_char(&rel.rhs), "{}", rel.name);
                let l = evaluate(&rel.lhs, &a).unwrap();
                let r = evaluate(&rel.rhs, &a).unwrap();
                assert!(l.max_abs_diff(&r) <= 1e-9, "{}: {}", rel.name, l.max_abs_diff(&r));
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let z2 = FrobeniusAlgebra::new(AlgebraData::z2_group_algebra()).unwrap();
        assert_eq!(evaluate(&t("id"), &z2).unwrap(), CMat::identity(2));
        let torus = evaluate(&genus_term(1), &z2).unwrap();
        assert_eq!(torus.shape(), (1, 1));
        assert!((torus[(0, 0)].re - 2.0).abs() < 1e-12);
        assert!(matches!(evaluate(&t("mul ; cap"), &z2), Err(BordError::GluingMismatch { .. })));
    }

    fn random_term(depth: usize, r: &mut impl Rng) -> Term {
        if depth == 0 || r.random_bool(0.3) {
            return Term::atom(Generator::ALL[r.random_range(0..6)]);
        }
        let a = random_term(depth - 1, r);
        let b = random_term(depth - 1, r);
        if r.random_bool(0.5) {
            Term::seq(a, b)
        } else {
            Term::par(a, b)
        }
    }

    #[test]
    fn pretty_print_roundtrip() {
        let mut r = crate::random::rng(11);
        for _ in 0..50 {
            let term = random_term(5, &mut r);
            let printed = term.to_string();
            let back = t(&printed);
            assert_eq!(back, term, "{printed}");
            assert_eq!(back.to_string(), printed);
        }
        assert_eq!(t("id * (id * id)").to_string(), "id * (id * id)");
        assert_eq!(t("((id ; id)) ; id").to_string(), "id ; id ; id");
        assert_eq!(t("id ; (id ; id)").to_string(), "id ; (id ; id)");
    }

    #[test]
    fn long_chains_do_not_recurse() {
        let src = vec!["id"; 20_000].join(";");
        let term = t(&src);
        assert_eq!(term.size(), 20_000);
        assert_eq!(typecheck(&term).unwrap(), BordType { inputs: 1, outputs: 1 });
        let z2 = FrobeniusAlgebra::new(AlgebraData::z2_group_algebra()).unwrap();
        assert_eq!(evaluate(&term, &z2).unwrap(), CMat::identity(2));
    }
}
