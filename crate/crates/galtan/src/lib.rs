pub mod suplat;
pub mod locale;
pub mod lrel;
pub mod locgroup;
pub mod comodule;
pub mod tannaka;
pub mod elevator;
pub mod instance;
pub mod cli;
