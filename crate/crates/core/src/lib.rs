pub mod coeff;
pub mod matrix;
pub mod params;
pub mod report;
pub mod repv;
pub mod repxi;
pub mod words;
pub mod algebra;
pub mod io;
pub mod cli;
