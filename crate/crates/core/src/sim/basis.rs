use super::{check_width, resolve, SimError};
use crate::circuit::{Circuit, Gate};
use crate::gf2::BitVector;

/// Runs a Hadamard-free circuit on one basis state. Returns the output
/// basis state and the accumulated phase as a multiple of π/4 (mod 8).
pub fn run_basis(c: &Circuit, input: &BitVector) -> Result<(BitVector, u8), SimError> {
    check_width(c, input.len())?;
    let mut s = input.clone();
    let mut phase = 0u8;
    for g in c.gates() {
        let on = |s: &BitVector, q: usize, k: u8| if s.get(q) { k } else { 0 };
        match g {
            Gate::X(q) => s.flip(*q),
            Gate::Z(q) => phase += on(&s, *q, 4),
            Gate::S(q) => phase += on(&s, *q, 2),
            Gate::Sdg(q) => phase += on(&s, *q, 6),
            Gate::T(q) => phase += on(&s, *q, 1),
            Gate::Tdg(q) => phase += on(&s, *q, 7),
            Gate::Cnot { .. } | Gate::Toffoli { .. } | Gate::Mcx { .. } => {
                if g.controls().iter().all(|&q| s.get(q)) {
                    s.flip(g.targets()[0]);
                }
            }
            Gate::Oracle { name, inputs, outputs } => {
                let spec = resolve(c, name)?;
                let x = inputs.iter().enumerate().fold(0u64, |acc, (j, &q)| acc | (u64::from(s.get(q)) << j));
                let y = spec.eval(x);
                for (j, &q) in outputs.iter().enumerate() {
                    if (y >> j) & 1 == 1 {
                        s.flip(q);
                    }
                }
            }
            Gate::H(_) => return Err(SimError::NonClassicalGate("H".into())),
        }
        phase %= 8;
    }
    Ok((s, phase))
}

/// [`run_basis`] with the basis state packed into a `u128`.
pub fn run_basis_u128(c: &Circuit, input: u128) -> Result<(u128, u8), SimError> {
    let q = c.qubit_count();
    if q > 128 {
        return Err(SimError::InvalidArgument(format!("{q} qubits do not fit in a u128")));
    }
    let mut v = BitVector::zeros(q.max(1));
    for i in 0..q {
        v.set(i, (input >> i) & 1 == 1);
    }
    let (out, phase) = run_basis(c, &v)?;
    let packed = (0..q).fold(0u128, |acc, i| acc | (u128::from(out.get(i)) << i));
    Ok((packed, phase))
}
