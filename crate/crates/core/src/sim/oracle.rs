use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SimError;

/// Truth table of a function `{0,1}^n_in → {0,1}^n_out`, applied in
/// circuits as `|x⟩|y⟩ → |x⟩|y ⊕ f(x)⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSpec {
    name: String,
    n_in: usize,
    n_out: usize,
    table: Vec<u64>,
}

impl OracleSpec {
    pub fn new(name: impl Into<String>, n_in: usize, n_out: usize, table: Vec<u64>) -> Result<Self, SimError> {
        let name = name.into();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(SimError::InvalidArgument(format!("oracle name {name:?} must be a single word")));
        }
        if n_in > 30 || n_out == 0 || n_out > 64 {
            return Err(SimError::InvalidArgument(format!("unsupported oracle shape {n_in} -> {n_out}")));
        }
        if table.len() != 1 << n_in {
            return Err(SimError::InvalidArgument(format!("table has {} entries, expected {}", table.len(), 1u64 << n_in)));
        }
        if n_out < 64 && table.iter().any(|&v| v >> n_out != 0) {
            return Err(SimError::InvalidArgument("table entry wider than the output register".into()));
        }
        Ok(Self { name, n_in, n_out, table })
    }

    pub fn from_fn(name: impl Into<String>, n_in: usize, n_out: usize, f: impl Fn(u64) -> u64) -> Result<Self, SimError> {
        let table = (0..1u64 << n_in).map(f).collect();
        Self::new(name, n_in, n_out, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn input_width(&self) -> usize {
        self.n_in
    }

    pub fn output_width(&self) -> usize {
        self.n_out
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.table[x as usize]
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }
}

/// A random two-to-one function with hidden period `s`.
#[derive(Debug, Clone)]
pub struct SimonOracle {
    pub n: usize,
    pub period: u64,
    pub spec: OracleSpec,
}

pub fn build_simon_oracle<R: Rng + ?Sized>(n: usize, s: u64, rng: &mut R) -> Result<SimonOracle, SimError> {
    if n == 0 || n > 20 {
        return Err(SimError::InvalidArgument(format!("n = {n} out of range")));
    }
    if s == 0 {
        return Err(SimError::ZeroPeriod);
    }
    if s >> n != 0 {
        return Err(SimError::InvalidArgument("period wider than n bits".into()));
    }
    let mut values: Vec<u64> = (0..1u64 << n).collect();
    values.shuffle(rng);
    let mut table = vec![0; 1 << n];
    let mut next = values.into_iter();
    for x in 0..1u64 << n {
        if x < x ^ s {
            let v = next.next().unwrap();
            table[x as usize] = v;
            table[(x ^ s) as usize] = v;
        }
    }
    Ok(SimonOracle { n, period: s, spec: OracleSpec::new("simon", n, n, table)? })
}

/// FX-construction instance. `E(k', ·)` is a random permutation for each
/// key guess `k'`; the distinguishing function is
/// `f(k', x) = E(k, x ⊕ k1) ⊕ k2 ⊕ E(k', x)`. The table index is
/// `x | k' << n`.
///
/// `E` is an idealised keyed family: `E(k, ·)` is drawn so that `f(k, ·)` is
/// exactly 2-to-1 with period `k1`, and each `E(k', ·)` with `k' ≠ k` is
/// drawn so that `f(k', ·)` is a uniformly random permutation. Real
/// permutation families do not give this at small `n` (every permutation of
/// 2-bit strings is affine, which makes `f(k, ·)` constant).
#[derive(Debug, Clone)]
pub struct FxOracle {
    pub m: usize,
    pub n: usize,
    pub key: u64,
    pub k1: u64,
    pub k2: u64,
    e: Vec<Vec<u64>>,
    pub spec: OracleSpec,
}

pub fn build_fx_oracle(m: usize, n: usize, key: u64, k1: u64, k2: u64, cipher_seed: u64) -> Result<FxOracle, SimError> {
    if m == 0 || n == 0 || m + n > 24 {
        return Err(SimError::InvalidArgument(format!("m = {m}, n = {n} out of range")));
    }
    if k1 == 0 {
        return Err(SimError::ZeroWhiteningKey);
    }
    if key >> m != 0 || k1 >> n != 0 || k2 >> n != 0 {
        return Err(SimError::InvalidArgument("key material wider than its register".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cipher_seed);
    let size = 1usize << n;

    // E(k, x ⊕ k1) ⊕ E(k, x) must take a distinct value on each coset {x, x ⊕ k1}.
    let mut diffs: Vec<u64> = (0..size as u64).collect();
    diffs.shuffle(&mut rng);
    let mut ek = vec![0u64; size];
    let mut coset = 0;
    for x in 0..size as u64 {
        if x < x ^ k1 {
            ek[x as usize] = rng.gen_range(0..size as u64);
            ek[(x ^ k1) as usize] = ek[x as usize] ^ diffs[coset];
            coset += 1;
        }
    }
    let enc: Vec<u64> = (0..size as u64).map(|x| ek[(x ^ k1) as usize] ^ k2).collect();
    let e: Vec<Vec<u64>> = (0..1u64 << m)
        .map(|kp| {
            if kp == key {
                return ek.clone();
            }
            let mut p: Vec<u64> = (0..size as u64).collect();
            p.shuffle(&mut rng);
            p.iter().zip(&enc).map(|(a, b)| a ^ b).collect()
        })
        .collect();
    let mask = (1u64 << n) - 1;
    let spec = OracleSpec::from_fn("fx", m + n, n, |idx| {
        let x = idx & mask;
        enc[x as usize] ^ e[(idx >> n) as usize][x as usize]
    })?;
    Ok(FxOracle { m, n, key, k1, k2, e, spec })
}

impl FxOracle {
    pub fn cipher(&self, key: u64, x: u64) -> u64 {
        self.e[key as usize][x as usize]
    }

    /// The FX encryption `E(k, x ⊕ k1) ⊕ k2`.
    pub fn encrypt(&self, x: u64) -> u64 {
        self.cipher(self.key, x ^ self.k1) ^ self.k2
    }

    pub fn f(&self, key_guess: u64, x: u64) -> u64 {
        self.spec.eval(x | key_guess << self.n)
    }

    /// `f(key_guess, ·)` as its own `n → n` oracle.
    pub fn restricted(&self, key_guess: u64) -> OracleSpec {
        OracleSpec::from_fn(format!("fx_k{key_guess}"), self.n, self.n, |x| self.f(key_guess, x))
            .expect("restriction of a valid oracle is valid")
    }

    /// Nonzero `s` with `f(key_guess, x ⊕ s) = f(key_guess, x)` for all `x`.
    pub fn periods(&self, key_guess: u64) -> Vec<u64> {
        (1..1u64 << self.n)
            .filter(|&s| (0..1u64 << self.n).all(|x| self.f(key_guess, x) == self.f(key_guess, x ^ s)))
            .collect()
    }
}
