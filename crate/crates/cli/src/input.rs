//! Loading map descriptors from a path, inline JSON or stdin.

use std::io::Read;

use hyperquadric::maps::{MapDescriptor, RationalMap};
use hyperquadric::Error;

/// Reads the raw descriptor text named by `arg`.
fn read_source(arg: &str) -> Result<String, Error> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| Error::Descriptor(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else if arg.trim_start().starts_with('{') {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Descriptor(format!("reading {arg}: {e}")))
    }
}

/// Parses a descriptor; polynomial errors keep their line/column, everything else
/// becomes a descriptor error.
pub fn load_map(arg: &str) -> Result<RationalMap, Error> {
    let text = read_source(arg)?;
    let desc: MapDescriptor =
        serde_json::from_str(&text).map_err(|e| Error::Descriptor(format!("invalid descriptor JSON: {e}")))?;
    desc.to_map().map_err(|e| match e {
        e @ Error::Parse { .. } => e,
        other => Error::Descriptor(other.to_string()),
    })
}
