//! Explicit sections of the coproduct cobordism in the twist region: the
//! cut-off profile, the end ODEs and their shooting constants, and the
//! cascade counts built from them.

pub mod cascade;
pub mod cutoff;
pub mod ode;
pub mod quadrature;

pub use cascade::{
    coproduct_from_cascades, count_cascades, moduli_descriptor, moduli_descriptor_with, moduli_shape,
    product_twist_descriptor, CascadeSpec, EndConstruction, FixedEnd, ModuliDescriptor,
};
pub use cutoff::CutoffProfile;
pub use ode::{
    bisect_c_infinity, shoot_c_infinity, solve_end_ode, verify_section_ansatz, AnsatzReport,
    AnsatzSign, EndOde, EndSide, SampleGrid, ShootResult, Trajectory,
};
