// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unbound identifier `{0}`")]
    Unbound(String),
    #[error("fusion coordinates must differ, got {0} twice")]
    SameFreshCoordinate(usize),
    #[error("coordinate {coord} lies in the dimension set of the {which} input")]
    CoordinateInDimension { coord: usize, which: &'static str },
    #[error("need {required} fresh coordinates, dilation provides {available}")]
    InsufficientFresh { required: usize, available: usize },
    #[error("dilation coordinate {0} lies in the base window")]
    FreshInBase(usize),
    #[error("`{0}` is not built from Po atoms")]
    NotPoElement(String),
    #[error("generators {0} and {1} are not disjoint")]
    OverlappingGenerators(usize, usize),
}
