//! Approximations by a subcategory.

use crate::category::{FinLinCategory, Morphism, ObjectExpr, Subcategory};
use crate::error::Result;

fn rank_hits_all(c: &FinLinCategory, domain_src: &ObjectExpr, domain_tgt: &ObjectExpr, cod_src: &ObjectExpr, cod_tgt: &ObjectExpr, map: impl Fn(&Morphism) -> Result<Morphism>) -> Result<bool> {
    let domain = c.hom_space(domain_src, domain_tgt);
    let example = c.zero_morphism(cod_src, cod_tgt);
    if example.coords.is_empty() {
        return Ok(true);
    }
    let m = c.linear_map(&domain, &example, map)?;
    Ok(m.rank() == example.coords.len())
}

/// First member `D` for which `f_*: Hom(D, A) → Hom(D, B)` is not onto.
pub fn d_epic_witness(c: &FinLinCategory, f: &Morphism, d: &Subcategory) -> Result<Option<usize>> {
    for &g in &d.members {
        let dg = ObjectExpr::single(g);
        if !rank_hits_all(c, &dg, &f.source, &dg, &f.target, |u| c.compose(f, u))? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// First member `D` for which `f^*: Hom(B, D) → Hom(A, D)` is not onto.
pub fn d_monic_witness(c: &FinLinCategory, f: &Morphism, d: &Subcategory) -> Result<Option<usize>> {
    for &g in &d.members {
        let dg = ObjectExpr::single(g);
        if !rank_hits_all(c, &f.target, &dg, &f.source, &dg, |u| c.compose(u, f))? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

pub fn is_d_epic(c: &FinLinCategory, f: &Morphism, d: &Subcategory) -> Result<bool> {
    Ok(d_epic_witness(c, f, d)?.is_none())
}

pub fn is_d_monic(c: &FinLinCategory, f: &Morphism, d: &Subcategory) -> Result<bool> {
    Ok(d_monic_witness(c, f, d)?.is_none())
}

/// Evaluation map `⊕ D_i → x` over every basis morphism from a member generator.
pub fn canonical_right_approximation(c: &FinLinCategory, x: &ObjectExpr, d: &Subcategory) -> Morphism {
    let mut parts = Vec::new();
    for &g in &d.members {
        let dg = ObjectExpr::single(g);
        let hs = c.hom_space(&dg, x);
        for k in 0..hs.dim {
            parts.push(c.basis_morphism(&dg, x, k));
        }
    }
    let source: ObjectExpr = parts.iter().flat_map(|p| p.source.summands().to_vec()).collect();
    let mut out = c.zero_morphism(&source, x);
    let tgt: Vec<usize> = (0..x.len()).collect();
    for (i, p) in parts.iter().enumerate() {
        c.place(&mut out, p, &[i], &tgt);
    }
    out
}

/// Coevaluation map `x → ⊕ D_i` over every basis morphism into a member generator.
pub fn canonical_left_approximation(c: &FinLinCategory, x: &ObjectExpr, d: &Subcategory) -> Morphism {
    let mut parts = Vec::new();
    for &g in &d.members {
        let dg = ObjectExpr::single(g);
        let hs = c.hom_space(x, &dg);
        for k in 0..hs.dim {
            parts.push(c.basis_morphism(x, &dg, k));
        }
    }
    let target: ObjectExpr = parts.iter().flat_map(|p| p.target.summands().to_vec()).collect();
    let mut out = c.zero_morphism(x, &target);
    let src: Vec<usize> = (0..x.len()).collect();
    for (i, p) in parts.iter().enumerate() {
        c.place(&mut out, p, &src, &[i]);
    }
    out
}
