//! The metaplectic family SO(N)₂, its structure censuses, and Ising⊠Ising.

mod census;
mod ising;
mod so_n2;

pub use census::{
    boson_fermion_census, expected_census, sixteen_m_component_census, structure_census, BosonFermionCensus, Check,
    ComponentCensus, ExpectedCensus, FixedPointEvidence, MetaplecticCensus, SixteenMCensus, Statistics,
};
pub use ising::{
    ising_squared_data, ising_squared_enumeration, ising_squared_total_count, IsingCount, IsingEnumeration,
    IsingParams,
};
pub use so_n2::{build_so_n2, SoLayout};
