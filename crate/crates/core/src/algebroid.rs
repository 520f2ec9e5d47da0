//! Vertex algebroids over polynomial carriers: the CDO structure maps, the
//! seven defining identities, morphisms `(φ, Δ)` and `Δ_{φ,ξ}`.

use crate::polycx::{sigma, Form, GaussRat, Poly, PolyBiholo, VField};
use crate::random::Sampler;
use crate::report::Check;
use crate::{Error, Result};

/// The three non-rigid maps of a vertex algebroid on a chart of dimension `d`.
/// The rigid part (functions, 1-forms, fields, `∂`, `[ ]`, `L_X`, `⟨ ⟩`) is the
/// standard one from [`crate::polycx`].
pub trait VertexAlgebroid {
    fn dim(&self) -> usize;
    fn star(&self, f: &Poly, x: &VField) -> Form;
    fn bracket0(&self, x: &VField, y: &VField) -> Poly;
    fn bracket1(&self, x: &VField, y: &VField) -> Form;
}

/// The βγ/CDO algebroid with splitting `X ↦ a_{i,−1}X^i`.
#[derive(Clone, Copy, Debug)]
pub struct Cdo {
    pub d: usize,
}

impl VertexAlgebroid for Cdo {
    fn dim(&self) -> usize {
        self.d
    }

    /// `f∗X = −X^i ∂_i∂_j f db^j`.
    fn star(&self, f: &Poly, x: &VField) -> Form {
        let comps: Vec<Poly> = (0..self.d).map(|j| -x.apply(&f.d(j))).collect();
        Form::one_form(&comps)
    }

    /// `{X,Y}₀ = −(∂_j X^i)(∂_i Y^j)`.
    fn bracket0(&self, x: &VField, y: &VField) -> Poly {
        let mut acc = Poly::zero();
        for i in 0..self.d {
            for j in 0..self.d {
                acc -= &(&x.0[i].d(j) * &y.0[j].d(i));
            }
        }
        acc
    }

    /// `{X,Y}₁ = −(∂_k∂_j X^i)(∂_i Y^j) db^k`.
    fn bracket1(&self, x: &VField, y: &VField) -> Form {
        let comps: Vec<Poly> = (0..self.d)
            .map(|k| {
                let mut acc = Poly::zero();
                for i in 0..self.d {
                    for j in 0..self.d {
                        acc -= &(&x.0[i].d(j).d(k) * &y.0[j].d(i));
                    }
                }
                acc
            })
            .collect();
        Form::one_form(&comps)
    }
}

/// All three maps replaced by zero; a deliberately broken algebroid.
#[derive(Clone, Copy, Debug)]
pub struct ZeroMaps {
    pub d: usize,
}

impl VertexAlgebroid for ZeroMaps {
    fn dim(&self) -> usize {
        self.d
    }
    fn star(&self, _: &Poly, _: &VField) -> Form {
        Form::zero()
    }
    fn bracket0(&self, _: &VField, _: &VField) -> Poly {
        Poly::zero()
    }
    fn bracket1(&self, _: &VField, _: &VField) -> Form {
        Form::zero()
    }
}

fn d_fn(f: &Poly) -> Form {
    Form::function(f.clone()).d_holo()
}

fn pair(alpha: &Form, x: &VField) -> Poly {
    x.pair(alpha)
}

pub const IDENTITY_NAMES: [&str; 7] = [
    "{X,Y}0 = {Y,X}0",
    "d{X,Y}0 = {X,Y}1 + {Y,X}1",
    "(fg)*X - f*(gX) - f(g*X) = -(Xf)dg - (Xg)df",
    "{X,fY}0 = f{X,Y}0 - <f*Y,X> - YXf",
    "{X,fY}1 = f{X,Y}1 - L_X(f*Y) + (Xf)*Y + f*[X,Y]",
    "X{Y,Z}0 - {[X,Y],Z}0 - {Y,[X,Z]}0 = <{X,Y}1,Z> + <{X,Z}1,Y>",
    "L_X{Y,Z}1 - L_Y{X,Z}1 + L_Z{X,Y}1 + {X,[Y,Z]}1 - {Y,[X,Z]}1 - {[X,Y],Z}1 = d<{X,Y}1,Z>",
];

/// Residuals of the seven identities on one input tuple, as displayable strings
/// (`None` where the residual is the zero polynomial).
pub fn identity_residuals<A: VertexAlgebroid>(
    va: &A,
    f: &Poly,
    g: &Poly,
    x: &VField,
    y: &VField,
    z: &VField,
) -> [Option<String>; 7] {
    let nz_p = |p: Poly| (!p.is_zero()).then(|| p.to_string());
    let nz_f = |w: Form| (!w.is_zero()).then(|| w.to_string());
    let r1 = nz_p(&va.bracket0(x, y) - &va.bracket0(y, x));
    let r2 = nz_f(&(&d_fn(&va.bracket0(x, y)) - &va.bracket1(x, y)) - &va.bracket1(y, x));
    let r3 = {
        let lhs = &(&va.star(&(f * g), x) - &va.star(f, &x.scale(g))) - &va.star(g, x).scale(f);
        let rhs = -&(&d_fn(g).scale(&x.apply(f)) + &d_fn(f).scale(&x.apply(g)));
        nz_f(&lhs - &rhs)
    };
    let r4 = {
        let lhs = va.bracket0(x, &y.scale(f));
        let rhs = &(&(f * &va.bracket0(x, y)) - &pair(&va.star(f, y), x)) - &y.apply(&x.apply(f));
        nz_p(&lhs - &rhs)
    };
    let r5 = {
        let lhs = va.bracket1(x, &y.scale(f));
        let rhs = &(&(&va.bracket1(x, y).scale(f) - &va.star(f, y).lie(x)) + &va.star(&x.apply(f), y))
            + &va.star(f, &x.bracket(y));
        nz_f(&lhs - &rhs)
    };
    let r6 = {
        let lhs = &(&x.apply(&va.bracket0(y, z)) - &va.bracket0(&x.bracket(y), z)) - &va.bracket0(y, &x.bracket(z));
        let rhs = &pair(&va.bracket1(x, y), z) + &pair(&va.bracket1(x, z), y);
        nz_p(&lhs - &rhs)
    };
    let r7 = {
        let lhs = [
            va.bracket1(y, z).lie(x),
            -va.bracket1(x, z).lie(y),
            va.bracket1(x, y).lie(z),
            va.bracket1(x, &y.bracket(z)),
            -va.bracket1(y, &x.bracket(z)),
            -va.bracket1(&x.bracket(y), z),
        ]
        .into_iter()
        .sum::<Form>();
        let rhs = d_fn(&pair(&va.bracket1(x, y), z));
        nz_f(&lhs - &rhs)
    };
    [r1, r2, r3, r4, r5, r6, r7]
}

/// Evaluates all seven identities on `trials` random tuples of degree ≤ `degree`.
pub fn axioms_check<A: VertexAlgebroid>(va: &A, trials: usize, seed: u64, degree: u32) -> Vec<Check> {
    let d = va.dim();
    let mut s = Sampler::new(seed);
    let mut witness: [Option<String>; 7] = Default::default();
    for t in 0..trials {
        let f = s.holo(d, degree);
        let g = s.holo(d, degree);
        let x = s.holo_field(d, degree);
        let y = s.holo_field(d, degree);
        let z = s.holo_field(d, degree);
        let res = identity_residuals(va, &f, &g, &x, &y, &z);
        for (k, r) in res.into_iter().enumerate() {
            if witness[k].is_none() {
                if let Some(r) = r {
                    witness[k] = Some(format!(
                        "trial {t}: f={f}, g={g}, X={x}, Y={y}, Z={z}; residual {r}"
                    ));
                }
            }
        }
    }
    IDENTITY_NAMES
        .iter()
        .zip(witness)
        .map(|(n, w)| Check::from_residual(*n, w).with_detail(format!("{trials} trials, d={d}")))
        .collect()
}

/// `Δ_{φ,ξ}` for `φ: U → V` and a `(2,0)`-form `ξ` on `U` with `∂ξ = WZ_φ`.
#[derive(Clone, Debug)]
pub struct DeltaPhiXi {
    phi: PolyBiholo,
    xi: Form,
}

impl DeltaPhiXi {
    pub fn new(phi: PolyBiholo, xi: Form) -> Result<Self> {
        if xi.bidegrees().iter().any(|b| *b != (2, 0)) {
            return Err(Error::Precondition(format!("ξ = {xi} is not a (2,0)-form")));
        }
        let wz = phi.wz();
        if xi.d_holo() != wz {
            return Err(Error::Precondition(format!("∂ξ = {} differs from WZ = {wz}", xi.d_holo())));
        }
        Ok(DeltaPhiXi { phi, xi })
    }

    pub fn phi(&self) -> &PolyBiholo {
        &self.phi
    }

    pub fn xi(&self) -> &Form {
        &self.xi
    }

    /// `Δ(X) = −∂_i(φ*X)^j θ^i_j − ½ Tr[θ(φ*X)·θ] − ½ ι_{φ*X} ξ` for `X` on `V`.
    pub fn apply(&self, x: &VField) -> Result<Form> {
        Ok(self.apply_pulled(&self.phi.pull_field(x)?))
    }

    /// The same expression for an already pulled-back field `Y = φ*X`.
    pub fn apply_pulled(&self, y: &VField) -> Form {
        local_delta(self.phi.theta(), &self.xi, y)
    }
}

/// `D(Y) = −∂_iY^j θ^i_j − ½ Tr[θ(Y)θ] − ½ ι_Y ξ` for a matrix of 1-forms `θ`.
pub fn local_delta(theta: &crate::polycx::MatForm, xi: &Form, y: &VField) -> Form {
    let d = y.dim();
    let mut acc = Form::zero();
    for i in 0..d {
        for j in 0..d {
            let dij = y.0[j].d(i);
            if !dij.is_zero() {
                acc = &acc - &theta.get(i, j).scale(&dij);
            }
        }
    }
    let half = GaussRat::rat(1, 2);
    let ty = theta.contract(y);
    let tr = ty.mul(theta).trace();
    &(&acc - &tr.scale_c(&half)) - &xi.contract(y).scale_c(&half)
}

/// How a morphism's `Δ` is computed.
#[derive(Clone, Debug)]
pub enum DeltaMap {
    Zero,
    PhiXi(DeltaPhiXi),
    /// `Δ(X) = φ_outer*(Δ_inner(X)) + Δ_outer(φ_inner* X)`.
    Composite(Box<VAMorphism>, Box<VAMorphism>),
}

/// Morphism `(φ*, Δ)` from the algebroid on `V` to the one on `U`, for `φ: U → V`.
#[derive(Clone, Debug)]
pub struct VAMorphism {
    pub phi: PolyBiholo,
    pub delta: DeltaMap,
}

impl VAMorphism {
    pub fn identity(d: usize) -> Self {
        VAMorphism { phi: PolyBiholo::identity(d), delta: DeltaMap::Zero }
    }

    pub fn from_phi_xi(phi: PolyBiholo, xi: Form) -> Result<Self> {
        Ok(VAMorphism { phi: phi.clone(), delta: DeltaMap::PhiXi(DeltaPhiXi::new(phi, xi)?) })
    }

    /// Rigid part only (`Δ = 0`).
    pub fn rigid(phi: PolyBiholo) -> Self {
        VAMorphism { phi, delta: DeltaMap::Zero }
    }

    pub fn delta(&self, x: &VField) -> Result<Form> {
        match &self.delta {
            DeltaMap::Zero => Ok(Form::zero()),
            DeltaMap::PhiXi(dp) => dp.apply(x),
            DeltaMap::Composite(outer, inner) => {
                let a = outer.phi.pull_form(&inner.delta(x)?)?;
                let b = outer.delta(&inner.phi.pull_field(x)?)?;
                Ok(&a + &b)
            }
        }
    }
}

/// `outer ∘ inner = (φ_inner∘φ_outer)*` with `Δ = φ_outer*Δ_inner + Δ_outer φ_inner*`.
pub fn compose(outer: &VAMorphism, inner: &VAMorphism) -> Result<VAMorphism> {
    if outer.phi.dim() != inner.phi.dim() {
        return Err(Error::Shape("morphisms act on charts of different dimension".into()));
    }
    Ok(VAMorphism {
        phi: outer.phi.then(&inner.phi)?,
        delta: DeltaMap::Composite(Box::new(outer.clone()), Box::new(inner.clone())),
    })
}

pub const MORPHISM_NAMES: [&str; 3] = ["star compatibility", "{}0 compatibility", "{}1 compatibility"];

/// Residuals of the three morphism equations for one input triple on `V`.
pub fn morphism_residuals<A: VertexAlgebroid, B: VertexAlgebroid>(
    m: &VAMorphism,
    source: &A,
    target: &B,
    f: &Poly,
    x: &VField,
    y: &VField,
) -> Result<[Option<String>; 3]> {
    let phi = &m.phi;
    let pf = phi.pull_fn(f)?;
    let px = phi.pull_field(x)?;
    let py = phi.pull_field(y)?;
    let dx = m.delta(x)?;
    let dy = m.delta(y)?;
    let e1 = {
        let lhs = target.star(&pf, &px);
        let rhs = &(&phi.pull_form(&source.star(f, x))? + &m.delta(&x.scale(f))?) - &dx.scale(&pf);
        &lhs - &rhs
    };
    let e2 = {
        let lhs = target.bracket0(&px, &py);
        let rhs = &(&phi.pull_fn(&source.bracket0(x, y))? - &pair(&dx, &py)) - &pair(&dy, &px);
        &lhs - &rhs
    };
    let e3 = {
        let lhs = target.bracket1(&px, &py);
        let rhs = [
            phi.pull_form(&source.bracket1(x, y))?,
            -dy.lie(&px),
            dx.lie(&py),
            -d_fn(&pair(&dx, &py)),
            m.delta(&x.bracket(y))?,
        ]
        .into_iter()
        .sum::<Form>();
        &lhs - &rhs
    };
    Ok([
        (!e1.is_zero()).then(|| e1.to_string()),
        (!e2.is_zero()).then(|| e2.to_string()),
        (!e3.is_zero()).then(|| e3.to_string()),
    ])
}

pub fn morphism_check<A: VertexAlgebroid, B: VertexAlgebroid>(
    m: &VAMorphism,
    source: &A,
    target: &B,
    trials: usize,
    seed: u64,
    degree: u32,
) -> Result<Vec<Check>> {
    let d = source.dim();
    let mut s = Sampler::new(seed);
    let mut witness: [Option<String>; 3] = Default::default();
    for t in 0..trials {
        let f = s.holo(d, degree);
        let x = s.holo_field(d, degree);
        let y = s.holo_field(d, degree);
        for (k, r) in morphism_residuals(m, source, target, &f, &x, &y)?.into_iter().enumerate() {
            if witness[k].is_none() {
                witness[k] = r.map(|r| format!("trial {t}: f={f}, X={x}, Y={y}; residual {r}"));
            }
        }
    }
    Ok(MORPHISM_NAMES
        .iter()
        .zip(witness)
        .map(|(n, w)| Check::from_residual(*n, w).with_detail(format!("{trials} trials")))
        .collect())
}

/// `η = ξ₁ + φ₁*ξ₂ + σ_{φ₂,φ₁}` for `φ₁: U → V`, `φ₂: V → W`.
pub fn composite_xi(phi1: &PolyBiholo, xi1: &Form, phi2: &PolyBiholo, xi2: &Form) -> Result<Form> {
    Ok(&(xi1 + &phi1.pull_form(xi2)?) + &sigma(phi2, phi1)?)
}

/// Checks `(φ₁*,Δ₁)∘(φ₂*,Δ₂) = ((φ₂φ₁)*, Δ_{φ₂φ₁,η})` on sampled fields, plus
/// `∂η = WZ_{φ₂φ₁}`.
pub fn composition_law_check(
    phi1: &PolyBiholo,
    xi1: &Form,
    phi2: &PolyBiholo,
    xi2: &Form,
    trials: usize,
    seed: u64,
) -> Result<Vec<Check>> {
    let m1 = VAMorphism::from_phi_xi(phi1.clone(), xi1.clone())?;
    let m2 = VAMorphism::from_phi_xi(phi2.clone(), xi2.clone())?;
    let comp = compose(&m1, &m2)?;
    let eta = composite_xi(phi1, xi1, phi2, xi2)?;
    let composite = phi1.then(phi2)?;
    let wz = composite.wz();
    let mut checks = vec![Check::from_residual(
        "d(eta) = WZ of composite",
        (eta.d_holo() != wz).then(|| format!("∂η − WZ = {}", &eta.d_holo() - &wz)),
    )];
    let direct = DeltaPhiXi::new(composite, eta)?;
    let d = phi1.dim();
    let mut s = Sampler::new(seed);
    let mut witness = None;
    for t in 0..trials {
        let x = s.holo_field(d, 2);
        let lhs = comp.delta(&x)?;
        let rhs = direct.apply(&x)?;
        if lhs != rhs && witness.is_none() {
            witness = Some(format!("trial {t}: X={x}; composed − direct = {}", &lhs - &rhs));
        }
    }
    checks.push(Check::from_residual("composed delta = delta(composite, eta)", witness).with_detail(format!("{trials} fields")));
    Ok(checks)
}

/// `φ*_ξ` preserves the conformal element exactly when `Tr θ_φ = 0`.
pub fn preserves_conformal(phi: &PolyBiholo) -> bool {
    phi.theta().trace().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycx::form::holo_bit;

    fn b(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn structure_map_examples() {
        let cdo = Cdo { d: 2 };
        assert!(cdo.star(&b(0), &VField::coord(2, 0)).is_zero());
        assert_eq!(cdo.star(&b(0).pow(2), &VField::coord(2, 0)), Form::term(holo_bit(0), Poly::int(-2)));
        let x = VField(vec![b(1), Poly::zero()]);
        let y = VField(vec![Poly::zero(), b(0)]);
        assert_eq!(cdo.bracket0(&x, &y), Poly::int(-1));
    }

    #[test]
    fn zero_maps_fail_star_identity() {
        let checks = axioms_check(&ZeroMaps { d: 2 }, 10, 1, 3);
        assert!(!checks[2].passed);
        assert!(checks[0].passed);
    }

    #[test]
    fn delta_on_identity_is_half_contraction() {
        let xi = Form::term(holo_bit(0) | holo_bit(1), b(0));
        let dp = DeltaPhiXi::new(PolyBiholo::identity(2), xi.clone()).unwrap();
        let x = VField(vec![b(1), Poly::one()]);
        assert_eq!(dp.apply(&x).unwrap(), xi.contract(&x).scale_c(&GaussRat::rat(-1, 2)));
    }

    #[test]
    fn wrong_xi_rejected() {
        let phi = PolyBiholo::identity(3);
        let xi = Form::term(holo_bit(0) | holo_bit(1), b(2));
        assert!(matches!(DeltaPhiXi::new(phi, xi), Err(Error::Precondition(_))));
    }

    #[test]
    fn shear_delta_example() {
        // φ = (b¹, b² + (b¹)²), X = ∂₂: φ*X = ∂₂ has constant components, so
        // only the trace term survives and it vanishes for this θ.
        let phi = PolyBiholo::shear(2, 1, b(0).pow(2)).unwrap();
        let dp = DeltaPhiXi::new(phi, Form::zero()).unwrap();
        assert!(dp.apply(&VField::coord(2, 1)).unwrap().is_zero());
        // X = b²∂₁: only −∂₂(φ*X)¹ θ²₁ = −2db¹ survives.
        let x = VField(vec![b(1), Poly::zero()]);
        let expected = Form::term(holo_bit(0), Poly::int(-2));
        assert_eq!(dp.apply(&x).unwrap(), expected);
    }

    #[test]
    fn cdo_axioms_hold() {
        for d in 1..=3 {
            assert!(axioms_check(&Cdo { d }, 15, d as u64, 3).iter().all(|c| c.passed));
        }
    }

    #[test]
    fn morphisms_pass_and_rigid_fails() {
        let cdo = Cdo { d: 2 };
        let phi = PolyBiholo::shear(2, 1, b(0).pow(2)).unwrap();
        let m = VAMorphism::from_phi_xi(phi.clone(), Form::zero()).unwrap();
        assert!(morphism_check(&m, &cdo, &cdo, 10, 3, 2).unwrap().iter().all(|c| c.passed));
        assert!(morphism_check(&VAMorphism::identity(2), &cdo, &cdo, 5, 3, 2).unwrap().iter().all(|c| c.passed));
        let rigid = morphism_check(&VAMorphism::rigid(phi), &cdo, &cdo, 10, 3, 2).unwrap();
        assert!(!rigid[0].passed);
    }

    #[test]
    fn opposite_shears_compose() {
        let phi1 = PolyBiholo::shear(2, 1, b(0).pow(2)).unwrap();
        let phi2 = PolyBiholo::shear(2, 0, b(1).pow(2)).unwrap();
        assert!(!sigma(&phi2, &phi1).unwrap().is_zero());
        let checks = composition_law_check(&phi1, &Form::zero(), &phi2, &Form::zero(), 5, 9).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }
}
