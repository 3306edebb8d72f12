//! Gate set and in-place application kernels.
//!
//! The set is deliberately small: Clifford generators, T, two real rotations
//! (Ry and a two-qubit Givens rotation), and an explicit AND pair for
//! temporary logical-and ancillas. CNOT, CZ and Toffoli are X and Z gates
//! carrying controls; constructors below build them directly. Controls are
//! first-class on every gate and may be positive or negative (fire on |1> or
//! on |0>).
//!
//! Application is in-place over the amplitude array with bit-masked stride
//! iteration; no gate ever materializes its matrix. Kernels operate on a raw
//! amplitude slice so callers can apply a gate to an aligned sub-block of a
//! larger register (used for flag-controlled state preparation, where each
//! flag branch is a contiguous half of the array).

use num_complex::Complex64;

use crate::error::{Result, SykError};
use crate::simkernel::state::StateVector;

/// Tolerance on the input norm accepted by the checked application paths.
pub const NORM_REJECT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    /// Real rotation exp(-i θ/2 Y): [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]].
    Ry(f64),
    /// Two-qubit real rotation in the span of |01> and |10>. With targets
    /// (a, b): |1_a 0_b> -> cos θ|1_a 0_b> + sin θ|0_a 1_b>, and the image of
    /// |0_a 1_b> completes the rotation; |00> and |11> are fixed.
    Givens(f64),
    /// Compute a fresh logical AND of the two controls into the target, which
    /// must hold |0>. Unitarily a Toffoli; in the T ledger it costs 4 T.
    AndCompute,
    /// Uncompute an AND pair. Unitarily a Toffoli; 0 T in the ledger
    /// (measurement-based uncomputation on hardware).
    AndUncompute,
}

impl GateKind {
    fn name(&self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Ry(_) => "ry",
            GateKind::Givens(_) => "givens",
            GateKind::AndCompute => "and",
            GateKind::AndUncompute => "unand",
        }
    }
}

/// A control terminal: the gate fires when `qubit` holds |1> if `value`,
/// or |0> if not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: u32,
    pub value: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<u32>,
    pub controls: Vec<Control>,
}

impl Gate {
    fn single(kind: GateKind, q: u32) -> Gate {
        Gate { kind, targets: vec![q], controls: Vec::new() }
    }

    pub fn h(q: u32) -> Gate {
        Gate::single(GateKind::H, q)
    }
    pub fn x(q: u32) -> Gate {
        Gate::single(GateKind::X, q)
    }
    pub fn y(q: u32) -> Gate {
        Gate::single(GateKind::Y, q)
    }
    pub fn z(q: u32) -> Gate {
        Gate::single(GateKind::Z, q)
    }
    pub fn s(q: u32) -> Gate {
        Gate::single(GateKind::S, q)
    }
    pub fn sdg(q: u32) -> Gate {
        Gate::single(GateKind::Sdg, q)
    }
    pub fn t(q: u32) -> Gate {
        Gate::single(GateKind::T, q)
    }
    pub fn tdg(q: u32) -> Gate {
        Gate::single(GateKind::Tdg, q)
    }
    pub fn ry(q: u32, theta: f64) -> Gate {
        Gate::single(GateKind::Ry(theta), q)
    }
    pub fn givens(a: u32, b: u32, theta: f64) -> Gate {
        Gate { kind: GateKind::Givens(theta), targets: vec![a, b], controls: Vec::new() }
    }
    pub fn cnot(control: u32, target: u32) -> Gate {
        Gate::x(target).controlled(control, true)
    }
    pub fn cz(control: u32, target: u32) -> Gate {
        Gate::z(target).controlled(control, true)
    }
    pub fn toffoli(c1: u32, c2: u32, target: u32) -> Gate {
        Gate::x(target).controlled(c1, true).controlled(c2, true)
    }
    pub fn and_compute(c1: u32, c2: u32, target: u32) -> Gate {
        Gate {
            kind: GateKind::AndCompute,
            targets: vec![target],
            controls: vec![Control { qubit: c1, value: true }, Control { qubit: c2, value: true }],
        }
    }
    pub fn and_uncompute(c1: u32, c2: u32, target: u32) -> Gate {
        Gate {
            kind: GateKind::AndUncompute,
            targets: vec![target],
            controls: vec![Control { qubit: c1, value: true }, Control { qubit: c2, value: true }],
        }
    }

    /// Add one more control terminal.
    pub fn controlled(mut self, qubit: u32, value: bool) -> Gate {
        self.controls.push(Control { qubit, value });
        self
    }

    /// The inverse gate. Self-inverse kinds map to themselves; phase gates
    /// swap with their daggers, rotations negate their angle, and AND
    /// compute/uncompute swap roles.
    pub fn adjoint(&self) -> Gate {
        let kind = match self.kind {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            GateKind::T => GateKind::Tdg,
            GateKind::Tdg => GateKind::T,
            GateKind::Ry(t) => GateKind::Ry(-t),
            GateKind::Givens(t) => GateKind::Givens(-t),
            GateKind::AndCompute => GateKind::AndUncompute,
            GateKind::AndUncompute => GateKind::AndCompute,
            k => k,
        };
        Gate { kind, targets: self.targets.clone(), controls: self.controls.clone() }
    }

    /// T-ledger value: T and T† count 1; an AND compute costs 4 T and its
    /// uncompute is free; a Toffoli outside an AND pair (an X with two or
    /// more controls) is accounted as 4 T. Everything else is Clifford or a
    /// rotation outside the ledger's scope.
    pub fn t_value(&self) -> u64 {
        match self.kind {
            GateKind::T | GateKind::Tdg => 1,
            GateKind::AndCompute => 4,
            GateKind::AndUncompute => 0,
            GateKind::X if self.controls.len() >= 2 => 4,
            _ => 0,
        }
    }

    /// Check index ranges and pairwise distinctness against a register width.
    pub fn validate(&self, width: u32) -> Result<()> {
        let expected_targets = match self.kind {
            GateKind::Givens(_) => 2,
            _ => 1,
        };
        if self.targets.len() != expected_targets {
            return Err(SykError::InvalidArgument(format!(
                "{} gate needs {} target(s), got {}",
                self.kind.name(),
                expected_targets,
                self.targets.len()
            )));
        }
        if matches!(self.kind, GateKind::AndCompute | GateKind::AndUncompute)
            && self.controls.len() != 2
        {
            return Err(SykError::InvalidArgument(
                "AND gates take exactly two controls".into(),
            ));
        }
        let mut seen: Vec<u32> = Vec::with_capacity(self.targets.len() + self.controls.len());
        for &q in self.targets.iter().chain(self.controls.iter().map(|c| &c.qubit)) {
            if q >= width {
                return Err(SykError::QubitOutOfRange { index: q, width });
            }
            if seen.contains(&q) {
                return Err(SykError::DuplicateQubit(q));
            }
            seen.push(q);
        }
        Ok(())
    }

    fn control_masks(&self) -> (usize, usize) {
        let mut on = 0usize;
        let mut off = 0usize;
        for c in &self.controls {
            if c.value {
                on |= 1usize << c.qubit;
            } else {
                off |= 1usize << c.qubit;
            }
        }
        (on, off)
    }

    /// Apply the gate in place to an amplitude block whose length is a power
    /// of two covering all touched qubits. Callers guarantee validity; this
    /// is the hot path shared by every checked entry point.
    pub(crate) fn apply_to_amps(&self, amps: &mut [Complex64]) {
        let (on, off) = self.control_masks();
        match self.kind {
            GateKind::H => {
                let f = std::f64::consts::FRAC_1_SQRT_2;
                pair_kernel(amps, self.targets[0], on, off, |a, b| (f * (a + b), f * (a - b)));
            }
            GateKind::X => {
                pair_kernel(amps, self.targets[0], on, off, |a, b| (b, a));
            }
            GateKind::Y => {
                let i = Complex64::new(0.0, 1.0);
                pair_kernel(amps, self.targets[0], on, off, |a, b| (-i * b, i * a));
            }
            GateKind::Z => {
                phase_kernel(amps, self.targets[0], on, off, Complex64::new(-1.0, 0.0));
            }
            GateKind::S => {
                phase_kernel(amps, self.targets[0], on, off, Complex64::new(0.0, 1.0));
            }
            GateKind::Sdg => {
                phase_kernel(amps, self.targets[0], on, off, Complex64::new(0.0, -1.0));
            }
            GateKind::T => {
                let f = std::f64::consts::FRAC_1_SQRT_2;
                phase_kernel(amps, self.targets[0], on, off, Complex64::new(f, f));
            }
            GateKind::Tdg => {
                let f = std::f64::consts::FRAC_1_SQRT_2;
                phase_kernel(amps, self.targets[0], on, off, Complex64::new(f, -f));
            }
            GateKind::Ry(theta) => {
                let (sn, cs) = (0.5 * theta).sin_cos();
                pair_kernel(amps, self.targets[0], on, off, |a, b| {
                    (cs * a - sn * b, sn * a + cs * b)
                });
            }
            GateKind::Givens(theta) => {
                givens_kernel(amps, self.targets[0], self.targets[1], on, off, theta);
            }
            GateKind::AndCompute | GateKind::AndUncompute => {
                // Unitarily a Toffoli; the controls are already in the masks.
                pair_kernel(amps, self.targets[0], on, off, |a, b| (b, a));
            }
        }
    }
}

impl std::fmt::Display for Gate {
    /// One-line export form: kind, target indices, control terminals
    /// (`@+q` fires on |1>, `@-q` on |0>), then the angle if any, printed
    /// with 17 significant digits.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.kind.name())?;
        for t in &self.targets {
            write!(f, " {t}")?;
        }
        for c in &self.controls {
            write!(f, " @{}{}", if c.value { '+' } else { '-' }, c.qubit)?;
        }
        match self.kind {
            GateKind::Ry(t) | GateKind::Givens(t) => write!(f, " {:.16e}", t)?,
            _ => {}
        }
        Ok(())
    }
}

/// Apply a 2x2 update (a, b) -> f(a, b) to every amplitude pair across
/// `target`, restricted to indices satisfying the control masks.
fn pair_kernel<F>(amps: &mut [Complex64], target: u32, on: usize, off: usize, f: F)
where
    F: Fn(Complex64, Complex64) -> (Complex64, Complex64),
{
    let tb = 1usize << target;
    let dim = amps.len();
    debug_assert!(tb < dim);
    if on == 0 && off == 0 {
        let mut base = 0usize;
        while base < dim {
            for i in base..base + tb {
                let j = i | tb;
                let (a, b) = (amps[i], amps[j]);
                let (a2, b2) = f(a, b);
                amps[i] = a2;
                amps[j] = b2;
            }
            base += tb << 1;
        }
    } else {
        let mut base = 0usize;
        while base < dim {
            for i in base..base + tb {
                if i & on == on && i & off == 0 {
                    let j = i | tb;
                    let (a, b) = (amps[i], amps[j]);
                    let (a2, b2) = f(a, b);
                    amps[i] = a2;
                    amps[j] = b2;
                }
            }
            base += tb << 1;
        }
    }
}

/// Multiply amplitudes with the target bit set (and controls satisfied) by a
/// phase.
fn phase_kernel(amps: &mut [Complex64], target: u32, on: usize, off: usize, phase: Complex64) {
    let tb = 1usize << target;
    for (i, a) in amps.iter_mut().enumerate() {
        if i & tb != 0 && i & on == on && i & off == 0 {
            *a *= phase;
        }
    }
}

fn givens_kernel(amps: &mut [Complex64], qa: u32, qb: u32, on: usize, off: usize, theta: f64) {
    let (sn, cs) = theta.sin_cos();
    let ab = (1usize << qa) | (1usize << qb);
    let abit = 1usize << qa;
    for i in 0..amps.len() {
        // Representative index: a set, b clear; partner swaps both bits.
        if i & ab == abit && i & on == on && i & off == 0 {
            let j = i ^ ab;
            let (a, b) = (amps[i], amps[j]);
            amps[i] = cs * a - sn * b;
            amps[j] = sn * a + cs * b;
        }
    }
}

/// Checked single-gate application: validates indices, rejects states whose
/// norm has drifted beyond [`NORM_REJECT_TOLERANCE`], and preserves the norm.
pub fn apply_gate(state: &mut StateVector, gate: &Gate) -> Result<()> {
    gate.validate(state.n_qubits())?;
    let deviation = (state.norm() - 1.0).abs();
    if deviation > NORM_REJECT_TOLERANCE {
        return Err(SykError::NotNormalized { deviation, tolerance: NORM_REJECT_TOLERANCE });
    }
    gate.apply_to_amps(state.amps_mut());
    Ok(())
}
