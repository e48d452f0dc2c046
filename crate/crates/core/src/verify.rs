//! Machine checks of the algebraic identities between the generators.
//!
//! Every check builds both sides from a [`GeneratorSet`] as tensor networks
//! and compares the contracted results. Maps follow the operator layout
//! `(outputs…, inputs…)`. Copy is the comultiplication and XOR the
//! multiplication of the two-element group bialgebra; the antipode is the
//! identity.

use std::fmt;

use crate::circuit::cn_polynomial_tensor;
use crate::generators::{swap, GeneratorSet};
use crate::logic::verify_hadamard_column_indexing;
use crate::network::{NodeId, TensorNetwork};
use crate::report::{RelationReport, Status};
use crate::tensor::{Amplitude, Tensor};

/// The seven relation families of the categorical presentation of the
/// copy/XOR gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LafontRelation {
    Associativity,
    UnitLaws,
    Symmetry,
    Bialgebra,
    CopyLaws,
    UnitScalar,
    Hopf,
}

impl LafontRelation {
    pub const ALL: [LafontRelation; 7] = [
        LafontRelation::Associativity,
        LafontRelation::UnitLaws,
        LafontRelation::Symmetry,
        LafontRelation::Bialgebra,
        LafontRelation::CopyLaws,
        LafontRelation::UnitScalar,
        LafontRelation::Hopf,
    ];

    pub fn id(self) -> &'static str {
        match self {
            LafontRelation::Associativity => "lafont-a-associativity",
            LafontRelation::UnitLaws => "lafont-b-unit-laws",
            LafontRelation::Symmetry => "lafont-c-symmetry",
            LafontRelation::Bialgebra => "lafont-d-bialgebra",
            LafontRelation::CopyLaws => "lafont-e-copy-laws",
            LafontRelation::UnitScalar => "lafont-f-unit-scalar",
            LafontRelation::Hopf => "lafont-g-hopf",
        }
    }
}

impl fmt::Display for LafontRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

fn contract(net: TensorNetwork) -> Tensor {
    net.contract().expect("relation networks are well-formed")
}

/// Small helper for wiring relation diagrams.
struct Diagram<'g> {
    g: &'g GeneratorSet,
    net: TensorNetwork,
}

impl<'g> Diagram<'g> {
    fn new(g: &'g GeneratorSet) -> Self {
        Diagram { g, net: TensorNetwork::new() }
    }
    fn copy(&mut self) -> NodeId {
        self.net.add_node(self.g.copy.clone())
    }
    fn xor(&mut self) -> NodeId {
        self.net.add_node(self.g.xor.clone())
    }
    fn node(&mut self, t: Tensor) -> NodeId {
        self.net.add_node(t)
    }
    fn wire(&mut self, a: (NodeId, usize), b: (NodeId, usize)) {
        self.net.bond(a, b).expect("leg exists");
    }
    fn finish(mut self, open: Vec<(NodeId, usize)>) -> Tensor {
        self.net.set_open_legs(open).expect("legs exist");
        contract(self.net)
    }
}

/// Copy as a 1→2 map: legs `(j, k, i)`.
fn copy_map(g: &GeneratorSet) -> Tensor {
    g.copy.permute_legs(&[2, 0, 1]).expect("rank 3")
}

fn associativity(g: &GeneratorSet, tol: f64) -> RelationReport {
    // ⊕∘(⊕⊗id): inputs (a, b, c)
    let mut d = Diagram::new(g);
    let (inner, outer) = (d.xor(), d.xor());
    d.wire((inner, 0), (outer, 1));
    let left = d.finish(vec![(outer, 0), (inner, 1), (inner, 2), (outer, 2)]);

    let mut d = Diagram::new(g);
    let (inner, outer) = (d.xor(), d.xor());
    d.wire((inner, 0), (outer, 2));
    let right = d.finish(vec![(outer, 0), (outer, 1), (inner, 1), (inner, 2)]);

    // (δ⊗id)∘δ vs (id⊗δ)∘δ
    let mut d = Diagram::new(g);
    let (first, second) = (d.copy(), d.copy());
    d.wire((first, 1), (second, 0));
    let co_left = d.finish(vec![(second, 1), (second, 2), (first, 2), (first, 0)]);

    let mut d = Diagram::new(g);
    let (first, second) = (d.copy(), d.copy());
    d.wire((first, 2), (second, 0));
    let co_right = d.finish(vec![(first, 1), (second, 1), (second, 2), (first, 0)]);

    RelationReport::combine(
        LafontRelation::Associativity.id(),
        vec![
            RelationReport::compare("", "⊕∘(⊕⊗id)", &left, "⊕∘(id⊗⊕)", &right, tol),
            RelationReport::compare("", "(δ⊗id)∘δ", &co_left, "(id⊗δ)∘δ", &co_right, tol),
        ],
    )
}

fn unit_laws(g: &GeneratorSet, tol: f64) -> RelationReport {
    let id = Tensor::identity(1);
    let mut parts = Vec::new();
    for (slot, free, desc) in [(1, 2, "⊕(|0⟩⊗v)"), (2, 1, "⊕(v⊗|0⟩)")] {
        let mut d = Diagram::new(g);
        let x = d.xor();
        let zero = d.node(g.ket_zero.clone());
        d.wire((x, slot), (zero, 0));
        let lhs = d.finish(vec![(x, 0), (x, free)]);
        parts.push(RelationReport::compare("", desc, &lhs, "v", &id, tol));
    }
    for (slot, free, desc) in [(1, 2, "(⟨+|⊗id)∘δ"), (2, 1, "(id⊗⟨+|)∘δ")] {
        let mut d = Diagram::new(g);
        let c = d.copy();
        let plus = d.node(g.plus.clone());
        d.wire((c, slot), (plus, 0));
        let lhs = d.finish(vec![(c, free), (c, 0)]);
        parts.push(RelationReport::compare("", desc, &lhs, "id", &id, tol));
    }
    RelationReport::combine(LafontRelation::UnitLaws.id(), parts)
}

fn symmetry(g: &GeneratorSet, tol: f64) -> RelationReport {
    let mut d = Diagram::new(g);
    let x = d.xor();
    let sw = d.node(swap());
    d.wire((x, 1), (sw, 0));
    d.wire((x, 2), (sw, 1));
    let xor_swapped = d.finish(vec![(x, 0), (sw, 2), (sw, 3)]);

    let mut d = Diagram::new(g);
    let c = d.copy();
    let sw = d.node(swap());
    d.wire((c, 1), (sw, 2));
    d.wire((c, 2), (sw, 3));
    let swapped_copy = d.finish(vec![(sw, 0), (sw, 1), (c, 0)]);

    RelationReport::combine(
        LafontRelation::Symmetry.id(),
        vec![
            RelationReport::compare("", "⊕∘swap", &xor_swapped, "⊕", &g.xor, tol),
            RelationReport::compare("", "swap∘δ", &swapped_copy, "δ", &copy_map(g), tol),
        ],
    )
}

fn bialgebra(g: &GeneratorSet, tol: f64) -> RelationReport {
    let mut d = Diagram::new(g);
    let x = d.xor();
    let c = d.copy();
    d.wire((x, 0), (c, 0));
    let lhs = d.finish(vec![(c, 1), (c, 2), (x, 1), (x, 2)]);

    // (⊕⊗⊕)∘(id⊗swap⊗id)∘(δ⊗δ)
    let mut d = Diagram::new(g);
    let (c1, c2) = (d.copy(), d.copy());
    let sw = d.node(swap());
    let (x1, x2) = (d.xor(), d.xor());
    d.wire((c1, 2), (sw, 2));
    d.wire((c2, 1), (sw, 3));
    d.wire((x1, 1), (c1, 1));
    d.wire((x1, 2), (sw, 0));
    d.wire((x2, 1), (sw, 1));
    d.wire((x2, 2), (c2, 2));
    let rhs = d.finish(vec![(x1, 0), (x2, 0), (c1, 0), (c2, 0)]);

    RelationReport::compare(
        LafontRelation::Bialgebra.id(),
        "δ∘⊕",
        &lhs,
        "(⊕⊗⊕)∘(id⊗swap⊗id)∘(δ⊗δ)",
        &rhs,
        tol,
    )
}

fn copy_laws(g: &GeneratorSet, tol: f64) -> RelationReport {
    let mut parts = Vec::new();
    for (ket, bit, desc, expect) in [
        (&g.ket_zero, false, "δ|0⟩", "|00⟩"),
        (&g.ket_one, true, "δ|1⟩", "|11⟩"),
    ] {
        let mut d = Diagram::new(g);
        let c = d.copy();
        let k = d.node(ket.clone());
        d.wire((c, 0), (k, 0));
        let lhs = d.finish(vec![(c, 1), (c, 2)]);
        parts.push(RelationReport::compare("", desc, &lhs, expect, &Tensor::basis(&[bit, bit]), tol));
    }
    RelationReport::combine(LafontRelation::CopyLaws.id(), parts)
}

fn unit_scalar(g: &GeneratorSet, tol: f64) -> RelationReport {
    let mut d = Diagram::new(g);
    let p = d.node(g.plus.clone());
    let z = d.node(g.ket_zero.clone());
    d.wire((p, 0), (z, 0));
    let lhs = d.finish(vec![]);
    RelationReport::compare(
        LafontRelation::UnitScalar.id(),
        "⟨+|0⟩",
        &lhs,
        "1 (blank page)",
        &Tensor::scalar(1.0.into()),
        tol,
    )
    .with_note("the blank diagram is taken to be ⟨+|0⟩")
}

fn hopf(g: &GeneratorSet, tol: f64) -> RelationReport {
    let mut d = Diagram::new(g);
    let c = d.copy();
    let x = d.xor();
    d.wire((c, 1), (x, 1));
    d.wire((c, 2), (x, 2));
    let lhs = d.finish(vec![(x, 0), (c, 0)]);
    let rhs = g.ket_zero.outer(&g.plus);
    RelationReport::compare(LafontRelation::Hopf.id(), "⊕∘δ", &lhs, "|0⟩⟨+|", &rhs, tol)
        .with_note("antipode = identity")
}

pub fn verify_lafont(g: &GeneratorSet, relation: LafontRelation, tol: f64) -> RelationReport {
    let mut r = match relation {
        LafontRelation::Associativity => associativity(g, tol),
        LafontRelation::UnitLaws => unit_laws(g, tol),
        LafontRelation::Symmetry => symmetry(g, tol),
        LafontRelation::Bialgebra => bialgebra(g, tol),
        LafontRelation::CopyLaws => copy_laws(g, tol),
        LafontRelation::UnitScalar => unit_scalar(g, tol),
        LafontRelation::Hopf => hopf(g, tol),
    };
    r.id = relation.id().to_string();
    r
}

/// `H^{⊗3}` applied to all three legs of the copy tensor.
fn hadamard_conjugated_copy(g: &GeneratorSet) -> Tensor {
    let mut d = Diagram::new(g);
    let c = d.copy();
    let hs: Vec<NodeId> = (0..3).map(|_| d.node(g.hadamard.clone())).collect();
    for (leg, &h) in hs.iter().enumerate() {
        d.wire((h, 1), (c, leg));
    }
    d.finish(hs.iter().map(|&h| (h, 0)).collect())
}

/// XOR against the copy tensor with a Hadamard on every leg.
pub fn verify_xor_is_copy_in_h_basis(g: &GeneratorSet, tol: f64) -> RelationReport {
    RelationReport::compare(
        "xor-is-copy-in-h-basis",
        "⊕",
        &g.xor,
        "(H⊗H⊗H)δ",
        &hadamard_conjugated_copy(g),
        tol,
    )
}

/// XOR with its output raised by a cup, acting on `|+⟩` and `|−⟩`; both must
/// be copied up to one shared scalar.
pub fn verify_xbasis_copy(g: &GeneratorSet, tol: f64) -> RelationReport {
    let h0 = g.hadamard.apply(&g.ket_zero).expect("rank-2 acting on rank-1");
    let h1 = g.hadamard.apply(&g.ket_one).expect("rank-2 acting on rank-1");
    let cup = g
        .copy
        .contract_pair(&[0], &g.plus, &[0])
        .expect("copy has an input leg");
    let mut parts = Vec::new();
    for (v, desc, expect) in [(&h0, "⊕ raised |+⟩", "|+,+⟩"), (&h1, "⊕ raised |−⟩", "|−,−⟩")] {
        let mut d = Diagram::new(g);
        let x = d.xor();
        let cu = d.node(cup.clone());
        let input = d.node(v.clone());
        d.wire((x, 0), (cu, 0));
        d.wire((cu, 1), (input, 0));
        let lhs = d.finish(vec![(x, 1), (x, 2)]);
        parts.push(RelationReport::compare("", desc, &lhs, expect, &v.outer(v), tol));
    }
    let lambdas: Vec<Option<Amplitude>> = parts.iter().map(|p| p.lambda()).collect();
    let mut r = RelationReport::combine("xor-copies-x-basis", parts);
    match (lambdas[0], lambdas[1]) {
        (Some(a), Some(b)) if (a - b).norm() <= tol => {}
        _ => {
            r.status = Status::Fails;
            r.note = Some("|+⟩ and |−⟩ are not copied with one shared scalar".into());
        }
    }
    r
}

fn textbook(rows: [[(f64, f64); 2]; 2]) -> Tensor {
    let a = |(re, im): (f64, f64)| Amplitude::new(re, im);
    Tensor::matrix([[a(rows[0][0]), a(rows[0][1])], [a(rows[1][0]), a(rows[1][1])]])
}

fn chain(ops: &[&Tensor]) -> Tensor {
    ops.iter()
        .skip(1)
        .fold(ops[0].clone(), |acc, op| acc.compose(op).expect("same width"))
}

/// Recovers the Clifford gates from the generators, in order: S, Z, X, Y,
/// unitarity of the wired CN, and the native Hadamard. Two phase-algebra
/// consequences (S² = Z, S⁴ = 1) follow.
pub fn verify_clifford_recovery(g: &GeneratorSet, tol: f64) -> Vec<RelationReport> {
    let s = g.lift(&g.t);
    let z = g.lift(&g.t_power(2));
    let h = &g.hadamard;
    let x = chain(&[h, &z, h]);
    let s3 = chain(&[&s, &s, &s]);
    let y = chain(&[&s, &x, &s3]);

    let mut cn = TensorNetwork::new();
    let c = cn.add_node(g.copy.clone());
    let xo = cn.add_node(g.xor.clone());
    cn.bond((c, 2), (xo, 1)).unwrap();
    cn.set_open_legs(vec![(c, 1), (xo, 0), (c, 0), (xo, 2)]).unwrap();
    let cn = contract(cn);
    let cn_dagger = cn.dagger().expect("operator");

    let one = Tensor::identity(1);
    vec![
        RelationReport::compare("clifford-s", "lift(|t¹⟩)", &s, "|0⟩⟨0|+i|1⟩⟨1|", &textbook([[(1., 0.), (0., 0.)], [(0., 0.), (0., 1.)]]), tol),
        RelationReport::compare("clifford-z", "lift(|t²⟩)", &z, "Z", &textbook([[(1., 0.), (0., 0.)], [(0., 0.), (-1., 0.)]]), tol),
        RelationReport::compare("clifford-x", "HZH", &x, "X", &textbook([[(0., 0.), (1., 0.)], [(1., 0.), (0., 0.)]]), tol),
        RelationReport::compare("clifford-y", "SXS³", &y, "Y", &textbook([[(0., 0.), (0., -1.)], [(0., 1.), (0., 0.)]]), tol),
        RelationReport::compare("clifford-cn-unitary", "CN·CN†", &cn.compose(&cn_dagger).unwrap(), "1", &Tensor::identity(2), tol),
        RelationReport::compare("clifford-h-native", "H·H", &h.compose(h).unwrap(), "1", &one, tol)
            .with_note("Hadamard is a primitive generator"),
        RelationReport::compare("phase-s-squared", "S²", &s.compose(&s).unwrap(), "Z", &z, tol),
        RelationReport::compare("phase-s-fourth", "S⁴", &chain(&[&s, &s, &s, &s]), "1", &one, tol),
    ]
}

const CN_LEGS: [&str; 4] = ["in-control", "in-target", "out-control", "out-target"];
const LITERAL_LEGS: [&str; 4] = ["i", "j", "q", "r"];

/// The literal `Σ_m δ^{ij}_m ⊕^m_{qr}` against its closed-form polynomial, and
/// against the wired Feynman tensor.
pub fn verify_cn_transcription(g: &GeneratorSet, tol: f64) -> Vec<RelationReport> {
    let literal = g.copy.contract_pair(&[2], &g.xor, &[0]).expect("rank-3 tensors");
    let closed_form = RelationReport::compare(
        "cnot-polynomial",
        "Σ_m δ^{ij}_m ⊕^m_qr",
        &literal,
        "closed-form polynomial",
        &cn_polynomial_tensor(),
        tol,
    );

    let mut net = TensorNetwork::new();
    let c = net.add_node(g.copy.clone());
    let x = net.add_node(g.xor.clone());
    net.bond((c, 2), (x, 1)).unwrap();
    net.set_open_legs(vec![(c, 0), (x, 2), (c, 1), (x, 0)]).unwrap();
    let feynman = contract(net);

    let mut relation = RelationReport::compare(
        "cnot-literal-vs-feynman",
        "CN^{ij}_{qr} as (in-c, in-t, out-c, out-t)",
        &literal,
        "wired Feynman gate",
        &feynman,
        tol,
    );
    let relabel = permutations4().into_iter().find(|perm| {
        literal
            .permute_legs(perm)
            .ok()
            .and_then(|p| p.max_abs_diff(&feynman).ok())
            .is_some_and(|d| d <= tol)
    });
    let note = match relabel {
        Some(perm) => {
            let mapping: Vec<String> = (0..4)
                .map(|leg| format!("{}={}", LITERAL_LEGS[leg], CN_LEGS[perm[leg]]))
                .collect();
            format!("equal under leg relabeling {}", mapping.join(", "))
        }
        None => "no leg relabeling makes the tensors equal".to_string(),
    };
    if relation.status == Status::Fails {
        relation = relation.expecting_mismatch();
    }
    vec![closed_form, relation.with_note(note)]
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|v| p.contains(&v)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Every relation the suite checks, in a fixed order.
pub fn canonical_suite(g: &GeneratorSet, tol: f64) -> Vec<RelationReport> {
    let mut reports: Vec<RelationReport> =
        LafontRelation::ALL.iter().map(|&r| verify_lafont(g, r, tol)).collect();
    reports.push(verify_xor_is_copy_in_h_basis(g, tol));
    reports.push(verify_xbasis_copy(g, tol));
    reports.extend(verify_clifford_recovery(g, tol));
    for n in 1..=4 {
        reports.push(
            verify_hadamard_column_indexing(&g.hadamard, n, tol).expect("n within 1..=6"),
        );
    }
    reports.extend(verify_cn_transcription(g, tol));
    reports
}

/// True when no report is an unexpected failure.
pub fn suite_passes(reports: &[RelationReport]) -> bool {
    !reports.iter().any(RelationReport::is_unexpected_failure)
}
