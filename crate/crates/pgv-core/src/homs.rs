//! Central endomorphisms and the central automorphism group.
//!
//! A *central* map multiplies every element by something in the center:
//! `a(g) = g * f(g mod derived)` for a homomorphism `f` from the
//! abelianization into the center. Because the correction values are
//! central, every such map is an endomorphism, and conversely every
//! endomorphism that fixes all cosets of the center arises this way. The
//! space of such `f` is finite and explicitly indexable: pick a basis of
//! the quotient by the derived subgroup, and send each basis coset of order
//! `p^s` anywhere in the `Omega_s` layer of the center.
//!
//! Everything here states its results in generator images: a map is a
//! `Vec<Element>` giving the image of each polycyclic generator, and the
//! relation checks ([`is_endomorphism`], [`is_automorphism`]) are exact —
//! they replay the defining relations through collection rather than
//! trusting any construction.

use num_traits::ToPrimitive;
use rand::Rng;

use crate::collect::{is_identity, Element};
use crate::presentation::PcPresentation;
use crate::structure::{
    center, derived_subgroup, is_purely_nonabelian, omega_of_central, quotient_basis,
    CentralSubgroup, StructureError,
};

/// log_p of `|Hom(A, B)|` for abelian p-groups with the given type
/// exponents: the sum of `min(a_i, b_j)` over all invariant pairs.
pub fn hom_order_exponent(a: &[u32], b: &[u32]) -> u32 {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x.min(y))).sum()
}

/// The space of homomorphisms from the abelianization into the center,
/// in explicit mixed-radix form.
pub struct CentralHomSpace {
    /// Orders (p-exponents) of the quotient basis cosets.
    source_orders: Vec<u32>,
    /// Coordinates of each generator's coset over the quotient basis.
    gen_coords: Vec<Vec<u64>>,
    /// `Omega_{s_i}` of the center: the allowed images of basis coset `i`.
    layers: Vec<CentralSubgroup>,
    layer_sizes: Vec<u128>,
}

impl CentralHomSpace {
    pub fn new(g: &PcPresentation) -> Self {
        let z = center(g);
        let qb = quotient_basis(g, &derived_subgroup(g));
        let layers: Vec<CentralSubgroup> = qb
            .order_exps
            .iter()
            .map(|&s| omega_of_central(g, &z, s))
            .collect();
        let layer_sizes: Vec<u128> = layers.iter().map(|l| l.size(g)).collect();
        let space = CentralHomSpace {
            source_orders: qb.order_exps.clone(),
            gen_coords: qb.gen_coords.clone(),
            layers,
            layer_sizes,
        };
        // The count must agree with the invariant-pair formula.
        let from_layers: u32 = space.layers.iter().map(|l| l.order_exponent()).sum();
        assert_eq!(
            from_layers,
            hom_order_exponent(&space.source_orders, z.abelian_type()),
            "layer sizes disagree with the pairwise-minimum formula"
        );
        space
    }

    /// Number of homomorphisms (hence of central maps).
    pub fn size(&self) -> u128 {
        self.layer_sizes.iter().product()
    }

    /// log_p of [`CentralHomSpace::size`].
    pub fn order_exponent(&self) -> u32 {
        self.layers.iter().map(|l| l.order_exponent()).sum()
    }

    /// Images of the quotient basis cosets under the homomorphism with
    /// mixed-radix index `idx`.
    fn hom_values_at(&self, g: &PcPresentation, mut idx: u128) -> Vec<Element> {
        let mut vals = Vec::with_capacity(self.layers.len());
        for (layer, &size) in self.layers.iter().zip(&self.layer_sizes) {
            vals.push(layer.element_at(g, idx % size));
            idx /= size;
        }
        assert_eq!(idx, 0, "hom index out of range");
        vals
    }

    /// Generator images of the central map with index `idx`: generator `j`
    /// goes to itself times the homomorphism value at its coset.
    pub fn images_at(&self, g: &PcPresentation, idx: u128) -> Vec<Element> {
        let vals = self.hom_values_at(g, idx);
        (0..g.ngens())
            .map(|j| {
                let mut img = g.generator(j);
                for (v, &c) in vals.iter().zip(&self.gen_coords[j]) {
                    if c != 0 {
                        img = g.multiply(&img, &g.pow_element(v, c as u128));
                    }
                }
                img
            })
            .collect()
    }
}

/// Evaluate a generator-image map on a normal-form word:
/// `w` maps to `prod_j images[j]^(w_j)` in generator order.
pub fn evaluate_word(g: &PcPresentation, images: &[Element], w: &[u64]) -> Element {
    let mut out = g.identity();
    for (img, &e) in images.iter().zip(w) {
        if e != 0 {
            out = g.multiply(&out, &g.pow_element(img, e as u128));
        }
    }
    out
}

/// Whether the generator images satisfy every defining relation: each image
/// has the generator's order bound, and each pair of images commutes to the
/// image of the recorded commutator word.
pub fn is_endomorphism(g: &PcPresentation, images: &[Element]) -> bool {
    assert_eq!(images.len(), g.ngens());
    let p = g.p();
    for (j, img) in images.iter().enumerate() {
        let ord = (p as u128).pow(g.order_exponents()[j]);
        if !is_identity(&g.pow_element(img, ord)) {
            return false;
        }
    }
    for k in 1..g.ngens() {
        for j in 0..k {
            let got = g.commutator(&images[k], &images[j]);
            let want = evaluate_word(g, images, g.comm(k, j));
            if got != want {
                return false;
            }
        }
    }
    true
}

/// Whether the generator images define an automorphism: an endomorphism of
/// a finite p-group is bijective exactly when the induced map on the
/// Frattini quotient is, i.e. when the mod-p image matrix is invertible.
pub fn is_automorphism(g: &PcPresentation, images: &[Element]) -> bool {
    is_endomorphism(g, images) && frattini_matrix_invertible(g, images)
}

fn frattini_matrix_invertible(g: &PcPresentation, images: &[Element]) -> bool {
    let p = g.p();
    let d = g.ngens();
    let mut m: Vec<Vec<u64>> = images
        .iter()
        .map(|img| img.iter().map(|&x| x % p).collect())
        .collect();
    // Gaussian elimination over F_p.
    let mut rank = 0;
    for col in 0..d {
        let Some(pivot) = (rank..d).find(|&r| m[r][col] % p != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = crate::arith::inv_mod(m[rank][col] % p, p).expect("pivot is a unit mod p");
        for x in &mut m[rank] {
            *x = (*x % p) * inv % p;
        }
        for r in 0..d {
            if r != rank && m[r][col] % p != 0 {
                let f = m[r][col] % p;
                for c in 0..d {
                    let sub = f * m[rank][c] % p;
                    m[r][c] = (m[r][c] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank == d
}

/// Whether the map moves every element only by central factors:
/// `x_j^{-1} a(x_j)` must commute with all generators.
pub fn is_central_map(g: &PcPresentation, images: &[Element]) -> bool {
    (0..g.ngens()).all(|j| {
        let shift = g.multiply(&g.inverse(&g.generator(j)), &images[j]);
        (0..g.ngens()).all(|i| {
            let gi = g.generator(i);
            g.multiply(&shift, &gi) == g.multiply(&gi, &shift)
        })
    })
}

/// log_p of the order of the central automorphism group.
///
/// For a group with no nontrivial abelian direct factor, every central map
/// is an automorphism and distinct homomorphisms give distinct maps, so the
/// order is exactly the hom-space size. The purity hypothesis is verified,
/// not assumed (hence the enumeration cap).
pub fn autcent_order_exponent(g: &PcPresentation, cap: u64) -> Result<u32, StructureError> {
    let pure = is_purely_nonabelian(g, cap)?;
    assert!(
        pure,
        "central automorphism count by hom-space size needs a purely nonabelian group"
    );
    Ok(CentralHomSpace::new(g).order_exponent())
}

/// A uniformly random central endomorphism (by hom index), as generator
/// images. Deterministic for a fixed seed and presentation.
pub fn sample_central_endomorphism(
    g: &PcPresentation,
    space: &CentralHomSpace,
    rng: &mut impl Rng,
) -> Vec<Element> {
    let size = space.size();
    let idx = if size <= 1 {
        0
    } else if let Some(small) = size.to_u64() {
        rng.gen_range(0..small) as u128
    } else {
        rng.gen_range(0..u64::MAX) as u128 % size
    };
    space.images_at(g, idx)
}
