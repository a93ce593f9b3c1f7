pub mod diskgeom;
pub mod error;
pub mod modelspace;
pub mod numkit;
pub mod sampling;
pub mod scalar;
pub mod tto;
pub mod uetto;

pub use num_complex::Complex;

pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;
pub type CMatrix64 = numkit::CMatrix<f64>;
pub type CMatrix32 = numkit::CMatrix<f32>;
pub type CVector64 = numkit::CVector<f64>;
pub type CVector32 = numkit::CVector<f32>;
pub type DiskPoint64 = diskgeom::DiskPoint<f64>;
pub type BlaschkeProduct64 = diskgeom::BlaschkeProduct<f64>;
pub type BlaschkeProduct32 = diskgeom::BlaschkeProduct<f32>;
pub type ModelSpace64 = modelspace::ModelSpace<f64>;
pub type AnalyticSymbol64 = tto::AnalyticSymbol<f64>;
pub type Certificate64 = uetto::Certificate<f64>;
pub type Decision64 = uetto::Decision<f64>;
