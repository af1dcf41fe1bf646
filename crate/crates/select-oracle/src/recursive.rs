//! Few-ancilla select: a ladder of conjunctions walked depth first, one
//! leaf per index value, leaves visited in order.

use circuit_core::{CircuitBuilder, Lit, Qubit};

/// Leaf callback: builder, index value, leaf control (None only for an
/// uncontrolled select over zero index bits).
pub type Leaf<'a> = dyn FnMut(&mut CircuitBuilder, usize, Option<Qubit>) + 'a;

/// Ancillas used by [`emit_recursive`] over `m` index bits.
pub fn recursive_ancillas(m: usize) -> usize {
    m
}

/// Emit Σ_x |x⟩⟨x| ⊗ leaf(x) over `index_msb` (most significant first).
/// Subtrees without active leaves are skipped, along with their ladder
/// gates. Without an external control the top rung is a plain CNOT, which
/// plays the role of an ancilla held in |1⟩.
pub fn emit_recursive(
    b: &mut CircuitBuilder,
    control: Option<Qubit>,
    index_msb: &[Qubit],
    active: &dyn Fn(usize) -> bool,
    leaf: &mut Leaf<'_>,
) {
    let m = index_msb.len();
    if m == 0 {
        if active(0) {
            leaf(b, 0, control);
        }
        return;
    }
    let mut prefix = vec![0usize; (1 << m) + 1];
    for x in 0..1usize << m {
        prefix[x + 1] = prefix[x] + active(x) as usize;
    }
    if prefix[1 << m] == 0 {
        return;
    }
    let chain = b.alloc_n(m);
    walk(b, control, index_msb, &chain, 0, &prefix, leaf);
    b.release_all(&chain);
}

fn walk(
    b: &mut CircuitBuilder,
    prev: Option<Qubit>,
    y: &[Qubit],
    chain: &[Qubit],
    x: usize,
    prefix: &[usize],
    leaf: &mut Leaf<'_>,
) {
    let l = y.len();
    if l == 0 {
        leaf(b, x, prev);
        return;
    }
    let half = 1usize << (l - 1);
    for (base, pos) in [(x, false), (x + half, true)] {
        if prefix[base + half] == prefix[base] {
            continue;
        }
        let lit = Lit { q: y[0], pos };
        rung(b, prev, lit, chain[0]);
        walk(b, Some(chain[0]), &y[1..], &chain[1..], base, prefix, leaf);
        rung(b, prev, lit, chain[0]);
    }
}

/// t ^= prev ∧ lit, with an absent `prev` standing for |1⟩.
fn rung(b: &mut CircuitBuilder, prev: Option<Qubit>, lit: Lit, t: Qubit) {
    match prev {
        Some(p) => b.toffoli_lit(lit, Lit::pos(p), t),
        None => {
            b.cnot(lit.q, t);
            if !lit.pos {
                b.x(t);
            }
        }
    }
}
