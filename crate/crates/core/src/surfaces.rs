//! Ready-made surfaces used throughout the examples and tests.

use crate::lattice::SurfaceDescriptor;

/// Picard number one with (H²) = 2: NS = Z·H.
pub fn rank_one() -> SurfaceDescriptor {
    SurfaceDescriptor::new("rank1", &[vec![2]], &[1]).expect("valid rank one surface")
}

/// E₁ × E₂ with non-isogenous factors: NS = Z·C₁ ⊕ Z·C₂, hyperbolic plane,
/// polarized by H = C₁ + C₂.
pub fn product_elliptic() -> SurfaceDescriptor {
    SurfaceDescriptor::new("product", &[vec![0, 1], vec![1, 0]], &[1, 1])
        .expect("valid product surface")
        .with_product_flag(true)
}

/// E × E without complex multiplication: NS spanned by the two fibres and the
/// diagonal, H = C₁ + C₂ + Δ.
pub fn self_product() -> SurfaceDescriptor {
    SurfaceDescriptor::new(
        "self-product",
        &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
        &[1, 1, 1],
    )
    .expect("valid self-product surface")
    .with_product_flag(true)
}

/// A Picard number two lattice 2x² + 2xy − 2y² with no isotropic classes,
/// hence no elliptic curves.
pub fn no_elliptic_rank_two() -> SurfaceDescriptor {
    SurfaceDescriptor::new("anisotropic", &[vec![2, 1], vec![1, -2]], &[1, 0])
        .expect("valid anisotropic surface")
}
