//! Shared fixtures for the benchmark suite.

use brucknet::{attach_perpendicularity, build_affine_plane, Geometry, Tau};

pub fn ag7() -> Geometry {
    build_affine_plane(7).unwrap()
}

pub fn tau8() -> Tau {
    Tau::new(vec![1, 0, 3, 2, 5, 4, 7, 6]).unwrap()
}

pub fn ag7_tau() -> Geometry {
    attach_perpendicularity(&ag7(), &tau8()).unwrap()
}

pub fn ag5() -> Geometry {
    build_affine_plane(5).unwrap()
}

pub fn tau6() -> Tau {
    Tau::new(vec![1, 0, 3, 2, 5, 4]).unwrap()
}
