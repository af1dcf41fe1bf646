//! Many-ancilla select: index bits are fanned out, a binary tree of flags
//! marks the active leaf, and the payloads hang off the leaves.

use circuit_core::{CircuitBuilder, Qubit};

use crate::pauli::{phase_on, PauliString};
use crate::ControlledImpl;

/// Extra qubits each Pauli leaf needs so its letters can act in parallel.
fn leaf_copies(p: &PauliString) -> usize {
    let cx = p.letters.iter().filter(|l| l.flips()).count();
    let cz = p.letters.iter().filter(|l| l.phases()).count();
    cx.max(cz).saturating_sub(1)
}

fn all_pauli<'a>(payloads: &[&'a dyn ControlledImpl]) -> Option<Vec<&'a PauliString>> {
    payloads.iter().map(|p| p.as_pauli()).collect()
}

/// Ancilla high-water mark of [`emit_router`].
pub fn router_ancillas(m: usize, payloads: &[&dyn ControlledImpl], controlled: bool) -> usize {
    if payloads.iter().all(|p| p.is_identity()) {
        return 0;
    }
    if m == 0 && !controlled {
        return payloads[0].ancillas();
    }
    let big = 1usize << m;
    let tree = (!controlled) as usize + 2 * big - 2 + (big - 1 - m);
    let extra = match all_pauli(payloads) {
        Some(ps) => ps.iter().map(|p| leaf_copies(p)).sum(),
        None => payloads.iter().map(|p| p.ancillas()).max().unwrap_or(0),
    };
    tree + extra
}

/// Emit Σ_x |x⟩⟨x| ⊗ U_x in O(m) depth plus the payload depth. Pauli
/// payloads are merged: each target gets one XOR-reduced CZ and one CNOT.
pub fn emit_router(
    b: &mut CircuitBuilder,
    control: Option<Qubit>,
    index_msb: &[Qubit],
    payloads: &[&dyn ControlledImpl],
    targets: &[Qubit],
) {
    let m = index_msb.len();
    assert_eq!(payloads.len(), 1 << m, "router payload count");
    if payloads.iter().all(|p| p.is_identity()) {
        return;
    }
    if m == 0 && control.is_none() {
        payloads[0].emit(b, None, targets);
        return;
    }
    let paulis = all_pauli(payloads);
    let root = match control {
        Some(c) => c,
        None => b.alloc(),
    };
    let mut owned = Vec::new();
    if control.is_none() {
        owned.push(root);
    }
    let mut avail: Vec<Vec<Qubit>> = Vec::with_capacity(m);
    for (d, &a) in index_msb.iter().enumerate() {
        let copies = b.alloc_n((1 << d) - 1);
        owned.extend_from_slice(&copies);
        let mut v = vec![a];
        v.extend(copies);
        avail.push(v);
    }
    let mut levels = vec![vec![root]];
    for d in 0..m {
        let next = b.alloc_n(2 << d);
        owned.extend_from_slice(&next);
        levels.push(next);
    }
    let leaves = levels[m].clone();
    let regs: Vec<Vec<Qubit>> = match &paulis {
        Some(ps) => leaves
            .iter()
            .zip(ps)
            .map(|(&f, p)| {
                let c = b.alloc_n(leaf_copies(p));
                owned.extend_from_slice(&c);
                let mut v = vec![f];
                v.extend(c);
                v
            })
            .collect(),
        None => Vec::new(),
    };

    let from = b.mark();
    if control.is_none() {
        b.x(root);
    }
    for v in &avail {
        b.fanout(v[0], &v[1..]);
    }
    for d in 0..m {
        for (i, &f) in levels[d].iter().enumerate() {
            let a = avail[d][i];
            let (c0, c1) = (levels[d + 1][2 * i], levels[d + 1][2 * i + 1]);
            b.toffoli(f, a, c1);
            b.cnot(f, c0);
            b.cnot(c1, c0);
        }
    }
    for r in &regs {
        b.fanout(r[0], &r[1..]);
    }
    let compute = b.since(from);

    match &paulis {
        Some(ps) => merged_paulis(b, ps, &regs, targets),
        None => {
            for (p, &f) in payloads.iter().zip(&leaves) {
                if !p.is_identity() {
                    p.emit(b, Some(f), targets);
                }
            }
        }
    }

    b.undo(&compute);
    b.release_all(&owned);
}

fn merged_paulis(b: &mut CircuitBuilder, ps: &[&PauliString], regs: &[Vec<Qubit>], targets: &[Qubit]) {
    // Y = i·X·Z, so the Z pass runs first and the i goes into the leaf phase
    for pass_z in [true, false] {
        let mut used = vec![0usize; ps.len()];
        for (l, &t) in targets.iter().enumerate() {
            let mut srcs = Vec::new();
            for (x, p) in ps.iter().enumerate() {
                let hit = if pass_z { p.letters[l].phases() } else { p.letters[l].flips() };
                if hit {
                    srcs.push(regs[x][used[x]]);
                    used[x] += 1;
                }
            }
            if srcs.is_empty() {
                continue;
            }
            let red = b.xor_reduce(&srcs);
            if pass_z {
                b.cz(srcs[0], t);
            } else {
                b.cnot(srcs[0], t);
            }
            b.undo(&red);
        }
    }
    for (p, r) in ps.iter().zip(regs) {
        phase_on(b, r[0], p.xz_phase());
    }
}
