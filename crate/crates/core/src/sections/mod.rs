//! Central sections of the cube and the section-dual body of a parallelepiped.

mod dual;
mod volume;

pub use dual::{
    cube_dual_gauge, first_minimum_section_dual, section_dual_gauge, SectionDual, MAX_SECTION_DUAL_DIM,
};
pub use volume::{cube_section_volume, section3_area, section_ratio, v_tau, ScaledRoot};
