pub mod decision;
pub mod ingest_cmd;
pub mod region;
pub mod simulate;
pub mod table2;
