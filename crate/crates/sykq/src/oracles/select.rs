//! Select oracles: index-controlled application of four-Majorana products.
//!
//! Three realizations with one shared slot convention (index value
//! ℓ = |p⟩|q⟩|r⟩|s⟩ controls the term on the system register):
//!
//! * [`SemanticSelect`]: the literal table — slot ℓ applies the exact
//!   operator product γ_p γ_q γ_r γ_s (out-of-range sub-values act as the
//!   identity). On repeated-index slots that product collapses to an
//!   anti-Hermitian pair whose square is −I, so the literal select is an
//!   involution only on the distinct-index subspace.
//! * [`TermSelect`]: the Hermitian-involution table the composed encoding
//!   uses — in-domain slots apply the Hermitian representative of their
//!   term, padding slots the identity. Every slot operator squares to +I,
//!   which is what makes the composed U self-inverse in both index modes.
//! * [`build_select_gates`]: a Clifford+T compilation of the semantic
//!   select via unary iteration with an AND ladder, reproducing the
//!   4N−4 / 16N−16 T ledger exactly.

use num_complex::Complex64;

use crate::error::{Result, SykError};
use crate::simkernel::{Circuit, Gate, PauliString, StateOp, StateVector};
use crate::sykmodel::{majorana_pauli, IndexMode, RegisterLayout};

/// The literal four-factor product for one slot, with out-of-range mode
/// indices (possible when N is not a power of two) contributing identity
/// factors.
pub fn slot_term(layout: &RegisterLayout, slot: usize) -> PauliString {
    let n = layout.n_modes();
    let (p, q, r, s) = layout.tuple_of(slot);
    let mut acc = PauliString::identity(n);
    for l in [p, q, r, s] {
        if l < n {
            acc = acc.mul(&majorana_pauli(l, n).expect("in-range checked"));
        }
    }
    acc
}

/// True when the slot's tuple belongs to the instance domain of `mode`.
pub fn slot_in_domain(layout: &RegisterLayout, slot: usize, mode: IndexMode) -> bool {
    let n = layout.n_modes();
    let (p, q, r, s) = layout.tuple_of(slot);
    match mode {
        IndexMode::AllTuples => p < n && q < n && r < n && s < n,
        IndexMode::DistinctSorted => p < q && q < r && r < s && s < n,
    }
}

/// Literal select oracle on an index ⊗ system register (system in the low
/// qubits, no flag). Slot ℓ applies the exact product γ_p γ_q γ_r γ_s.
#[derive(Debug, Clone)]
pub struct SemanticSelect {
    layout: RegisterLayout,
    table: Vec<PauliString>,
}

impl SemanticSelect {
    pub fn build(layout: RegisterLayout) -> Self {
        let table = (0..layout.index_dim()).map(|slot| slot_term(&layout, slot)).collect();
        SemanticSelect { layout, table }
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn table(&self) -> &[PauliString] {
        &self.table
    }

    /// Apply to one index ⊗ system slice (width n_index + n_system).
    pub(crate) fn apply_to_slice(&self, amps: &mut [Complex64]) {
        apply_slot_table(&self.table, amps, self.layout.n_system());
    }
}

fn apply_slot_table(table: &[PauliString], amps: &mut [Complex64], n_system: u32) {
    let sys_dim = 1usize << n_system;
    debug_assert_eq!(amps.len(), table.len() * sys_dim);
    for (slot, term) in table.iter().enumerate() {
        term.apply_to_amps(&mut amps[slot * sys_dim..(slot + 1) * sys_dim]);
    }
}

impl StateOp for SemanticSelect {
    fn n_qubits(&self) -> u32 {
        self.layout.n_system() + self.layout.n_index()
    }

    fn apply(&self, state: &mut StateVector) -> Result<()> {
        check_width(self.n_qubits(), state.n_qubits())?;
        self.apply_to_slice(state.amps_mut());
        Ok(())
    }

    fn apply_inverse(&self, state: &mut StateVector) -> Result<()> {
        check_width(self.n_qubits(), state.n_qubits())?;
        let sys_dim = 1usize << self.layout.n_system();
        let amps = state.amps_mut();
        for (slot, term) in self.table.iter().enumerate() {
            term.adjoint().apply_to_amps(&mut amps[slot * sys_dim..(slot + 1) * sys_dim]);
        }
        Ok(())
    }
}

fn check_width(expected: u32, actual: u32) -> Result<()> {
    if expected != actual {
        return Err(SykError::WidthMismatch { expected, actual });
    }
    Ok(())
}

/// Hermitian-involution select: the realization composed into U. Padding
/// slots (`None`) act as the identity; in-domain slots apply the Hermitian
/// representative of their literal term (the term itself when Hermitian,
/// −i times it when the literal product is anti-Hermitian).
#[derive(Debug, Clone)]
pub struct TermSelect {
    layout: RegisterLayout,
    table: Vec<Option<PauliString>>,
}

impl TermSelect {
    pub fn build(layout: RegisterLayout, mode: IndexMode) -> Self {
        let table = (0..layout.index_dim())
            .map(|slot| {
                slot_in_domain(&layout, slot, mode)
                    .then(|| slot_term(&layout, slot).hermitian_representative())
            })
            .collect();
        TermSelect { layout, table }
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn table(&self) -> &[Option<PauliString>] {
        &self.table
    }

    /// Apply to one index ⊗ system slice (width n_index + n_system).
    /// Self-adjoint: every slot operator is a Hermitian involution.
    pub(crate) fn apply_to_slice(&self, amps: &mut [Complex64]) {
        let sys_dim = 1usize << self.layout.n_system();
        debug_assert_eq!(amps.len(), self.table.len() * sys_dim);
        for (slot, term) in self.table.iter().enumerate() {
            if let Some(t) = term {
                t.apply_to_amps(&mut amps[slot * sys_dim..(slot + 1) * sys_dim]);
            }
        }
    }
}

impl StateOp for TermSelect {
    fn n_qubits(&self) -> u32 {
        self.layout.n_system() + self.layout.n_index()
    }

    fn apply(&self, state: &mut StateVector) -> Result<()> {
        check_width(self.n_qubits(), state.n_qubits())?;
        self.apply_to_slice(state.amps_mut());
        Ok(())
    }

    fn apply_inverse(&self, state: &mut StateVector) -> Result<()> {
        self.apply(state)
    }
}

/// Clifford+T compilation of the semantic select for N a power of two.
///
/// Register, low to high: system (N), index (4k, s sub-register lowest),
/// ladder ancillae (k), enable (1). All ancillae start and end in |0⟩; the
/// circuit toggles the enable line itself. Each of the four passes walks
/// its sub-register by unary iteration: one AND per internal node of the
/// value tree (4 T each, uncompute free), two CNOTs to switch branches, and
/// a controlled X_ℓ then Z_{ℓ-1}..Z_0 chain at each leaf. T ledger:
/// 4(N−1) per Majorana pass, 16(N−1) total.
pub fn build_select_gates(n_modes: u32) -> Result<Circuit> {
    if !n_modes.is_power_of_two() || n_modes < 2 {
        return Err(SykError::InvalidArgument(format!(
            "gate-level select needs N a power of two with N >= 2, got {n_modes}"
        )));
    }
    let layout = RegisterLayout::for_modes(n_modes)?;
    let n = layout.n_system();
    let k = layout.k();
    let width = layout.select_width();
    let ladder_base = n + layout.n_index();
    let enable = ladder_base + k;
    let ladder: Vec<u32> = (0..k).map(|l| ladder_base + l).collect();

    let mut c = Circuit::new(width, format!("select-gates-n{n_modes}"));
    c.push(Gate::x(enable))?;
    for sub in 0..4u32 {
        // Pass order s, r, q, p (sub-register 0 is s, the lowest k bits).
        let base = n + sub * k;
        // Address bits high-to-low so the recursion splits on the most
        // significant bit first.
        let addr: Vec<u32> = (0..k).rev().map(|b| base + b).collect();
        emit_unary_iteration(&mut c, enable, &addr, &ladder, 0, n_modes as usize, &mut |c, ctrl, l| {
            apply_controlled_majorana(c, ctrl, l as u32)
        })?;
    }
    c.push(Gate::x(enable))?;
    Ok(c)
}

/// Controlled γ_ℓ = X_ℓ Z_{ℓ-1}…Z_0: the factors act on distinct qubits,
/// so the controlled product is the product of controlled factors.
fn apply_controlled_majorana(c: &mut Circuit, ctrl: u32, l: u32) -> Result<()> {
    c.push(Gate::cnot(ctrl, l))?;
    for z in 0..l {
        c.push(Gate::cz(ctrl, z))?;
    }
    Ok(())
}

/// Unary iteration over values [lo, hi) addressed by `addr` (one bit per
/// remaining level, most significant first), rooted at `ctrl`. At each
/// internal node: AND(ctrl, bit) into the level ancilla, recurse into the
/// set-bit half, CNOT to flip the ancilla to ctrl∧¬bit, recurse into the
/// clear-bit half, CNOT back, uncompute the AND.
fn emit_unary_iteration(
    c: &mut Circuit,
    ctrl: u32,
    addr: &[u32],
    anc: &[u32],
    lo: usize,
    hi: usize,
    leaf: &mut dyn FnMut(&mut Circuit, u32, usize) -> Result<()>,
) -> Result<()> {
    debug_assert!(hi > lo);
    if hi - lo == 1 {
        return leaf(c, ctrl, lo);
    }
    let bit = addr[0];
    let t = anc[0];
    let mid = lo + (hi - lo) / 2;
    c.push(Gate::and_compute(ctrl, bit, t))?;
    emit_unary_iteration(c, t, &addr[1..], &anc[1..], mid, hi, leaf)?;
    c.push(Gate::cnot(ctrl, t))?;
    emit_unary_iteration(c, t, &addr[1..], &anc[1..], lo, mid, leaf)?;
    c.push(Gate::cnot(ctrl, t))?;
    c.push(Gate::and_uncompute(ctrl, bit, t))?;
    Ok(())
}

/// T count of one Majorana pass of the compiled select (for ledger
/// reporting): a quarter of the full circuit.
pub fn per_majorana_t_count(n_modes: u32) -> Result<u64> {
    let c = build_select_gates(n_modes)?;
    debug_assert_eq!(c.t_count() % 4, 0);
    Ok(c.t_count() / 4)
}
