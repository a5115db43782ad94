pub mod exactnum;
pub mod indicator;
pub mod patch;
pub mod polytope;
pub mod substitution;
pub mod vertexstar;
