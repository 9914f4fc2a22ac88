//! Representability of sign patterns by rational symmetric matrices:
//! certificates, randomized search, orbit sweeps, composition of reducible
//! patterns and the leading-minor constructions.

mod certificate;
mod compose;
mod lpr;
mod search;
mod special;
mod sweep;

pub use certificate::{
    certificate_from_json, certificate_to_json, read_database, verify_certificate, write_database,
    Certificate, CertificateRecord, SearchMeta, Strategy, Verdict,
};
pub use compose::{block_diagonal_compose, block_diagonal_compose_on, star_segment_check};
pub use lpr::{leading_signs, lpr_diagonal_representative, lpr_transport, LeadingPattern};
pub use search::{
    order2_base, random_search, search, seeded_search, singleton_diagonal, SearchConfig,
    PERTURB_MAX_DEN, PERTURB_MIN_DEN, PERTURB_NUM,
};
pub use special::{s_star, s_star_prime, sigma_star_prime, table1, Table1Row};
pub use sweep::{derive_seed, sweep_orbits, SweepReport, Unresolved, SWEEP_CHUNK, SWEEP_ROUND};
