//! Seeded generators for polynomial test data.
//!
//! Every generator draws from a ChaCha stream, so a `(seed, call sequence)`
//! pair reproduces the same inputs on every platform.

use crate::genus::{partitions, ChernData};
use crate::polycx::form::{anti_bit, holo_bit, Form};
use crate::polycx::{GaussRat, Mono, Poly, PolyBiholo, Var, VField};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sampler {
    rng: ChaCha8Rng,
    /// Largest absolute value of integer coefficients.
    pub height: i64,
    /// Number of monomials drawn per polynomial.
    pub terms: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), height: 3, terms: 3 }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn nonzero_int(&mut self) -> i64 {
        let v = self.rng.gen_range(1..=self.height);
        if self.rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    }

    pub fn coeff(&mut self, gaussian: bool) -> GaussRat {
        let re = self.nonzero_int();
        if gaussian && self.rng.gen_bool(0.3) {
            GaussRat::new(crate::polycx::qi(re), crate::polycx::qi(self.nonzero_int()))
        } else {
            GaussRat::int(re)
        }
    }

    fn exponents(&mut self, d: usize, deg: u32) -> Vec<u32> {
        let total = self.rng.gen_range(0..=deg);
        let mut e = vec![0u32; d];
        if d > 0 {
            for _ in 0..total {
                let i = self.rng.gen_range(0..d);
                e[i] += 1;
            }
        }
        e
    }

    /// Holomorphic polynomial in `b1..bd` of degree at most `deg`.
    pub fn holo(&mut self, d: usize, deg: u32) -> Poly {
        self.smooth(d, deg, 0)
    }

    /// Polynomial in `b` and `B` with the given degree bounds.
    pub fn smooth(&mut self, d: usize, deg: u32, deg_bar: u32) -> Poly {
        let mut p = Poly::zero();
        for _ in 0..self.terms {
            let eh = self.exponents(d, deg);
            let ea = self.exponents(d, deg_bar);
            let mut m = Mono::one();
            for i in 0..d {
                m = m.with(Var::Holo(i), eh[i] as i32).with(Var::Anti(i), ea[i] as i32);
            }
            let c = self.coeff(deg_bar > 0);
            p.add_term(m, c);
        }
        p
    }

    pub fn holo_field(&mut self, d: usize, deg: u32) -> VField {
        VField((0..d).map(|_| self.holo(d, deg)).collect())
    }

    pub fn smooth_field(&mut self, d: usize, deg: u32, deg_bar: u32) -> VField {
        VField((0..d).map(|_| self.smooth(d, deg, deg_bar)).collect())
    }

    /// Random form of bidegree `(p, q)`.
    pub fn form(&mut self, d: usize, p: usize, q: usize, deg: u32, deg_bar: u32) -> Form {
        let mut out = Form::zero();
        if p > d || q > d {
            return out;
        }
        for _ in 0..2 {
            let mut idx: Vec<usize> = (0..d).collect();
            idx.shuffle(&mut self.rng);
            let mut jdx: Vec<usize> = (0..d).collect();
            jdx.shuffle(&mut self.rng);
            let mask = idx[..p].iter().fold(0, |m, i| m | holo_bit(*i))
                | jdx[..q].iter().fold(0, |m, j| m | anti_bit(*j));
            let c = self.smooth(d, deg, deg_bar);
            out.add_term(mask, c);
        }
        out
    }

    /// Random triangular shear `b^i ↦ b^i + p(other variables)`.
    pub fn shear(&mut self, d: usize, deg: u32) -> PolyBiholo {
        let i = self.rng.gen_range(0..d);
        let mut p = self.holo(d, deg);
        // drop the dependence on b^i by substituting 0
        p = p.substitute(&|v| (v == Var::Holo(i)).then(Poly::zero)).expect("polynomial substitution");
        PolyBiholo::shear(d, i, p).expect("valid shear")
    }

    /// Random affine map with small integer entries and a unimodular-ish linear part.
    pub fn affine(&mut self, d: usize) -> PolyBiholo {
        loop {
            let a: Vec<Vec<GaussRat>> = (0..d)
                .map(|_| (0..d).map(|_| GaussRat::int(self.rng.gen_range(-2..=2))).collect())
                .collect();
            let c: Vec<GaussRat> = (0..d).map(|_| GaussRat::int(self.rng.gen_range(-2..=2))).collect();
            if let Ok(phi) = PolyBiholo::affine(&a, &c) {
                return phi;
            }
        }
    }

    /// Random Chern numbers with every `c1`-containing entry zero.
    pub fn c1_free_chern(&mut self, d: u32) -> ChernData {
        let numbers = partitions(d)
            .into_iter()
            .map(|p| {
                let v = if p.contains(&1) { 0 } else { self.rng.gen_range(-30..=30) };
                (p, v)
            })
            .collect();
        ChernData::new(d, numbers).expect("all partitions present")
    }

    pub fn chern(&mut self, d: u32) -> ChernData {
        let numbers = partitions(d).into_iter().map(|p| (p, self.rng.gen_range(-30..=30))).collect();
        ChernData::new(d, numbers).expect("all partitions present")
    }
}
