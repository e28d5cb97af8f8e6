//! Finite-group character tables and the change of variables of the
//! crepant resolution conjecture for subgroups of SL(V).

mod crc;
mod cyclotomic;
mod dixon;
mod group;
mod rep;

pub use crc::{crc_change_of_variables, grading_check, CrcEntry, CrcRow, CrcTransform, RootOfUnity};
pub use cyclotomic::Cyclotomic;
pub use dixon::{character_table, CharacterTable};
pub use group::{parse_cayley_json, parse_perm_text, CayleyFile, ConjugacyClasses, FiniteGroup};
pub use rep::{
    so3_a4, so3_s3, so3_z2z2, su2_cyclic, su2_cyclic_weights, Matrix, Representation,
};
