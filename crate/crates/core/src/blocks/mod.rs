//! Higher-level blocks: products of relabelled `P` functions, the
//! difference-product spaces `L^ℓ(λ)`, dimension counts, sign-word bases,
//! Schur-decorated sums and leading asymptotics.

mod asymptotics;
mod decorated;
mod dims;
mod families;
mod lspace;
mod signwords;

pub use asymptotics::{
    alpha_exponents, asymptotic_leading_general, check_p_asymptotics, clustered_limit, clustered_target,
    discriminant, nested_leading_exponents, nested_limit, remark42_check, y_determinant, AsymptoticCheck, LimitMode,
};
pub use decorated::{build_decorated_p, is_lambda_symmetric, schur_s};
pub use dims::{cb_dim_generic, cb_dim_sl2, pascal_table};
pub use families::{
    build_p_relabeled, build_q, enumerate_u_families, evaluate_all_q, mu_of_part, validate_u_family, QProduct,
    UFamily,
};
pub use lspace::{l_dim, l_generators, phi_map, phi_psi_report, psi_map, r_poly, square_free_drop, PhiPsiReport};
pub use signwords::{build_qw, enumerate_sign_words, sign_word_families, QwSum, SignWord};
