use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{DealStats, HarnessError};
use crate::deals::Shard;

const FORMAT: u32 = 1;

/// Progress of one shard: every position before `next_position` has been
/// solved and folded into `stats`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub format: u32,
    pub shard: Shard,
    pub block_size: u64,
    pub next_position: u64,
    pub stats: DealStats,
}

#[derive(Serialize, Deserialize)]
struct Sealed {
    #[serde(flatten)]
    body: Checkpoint,
    digest: String,
}

fn digest(body: &Checkpoint) -> String {
    let bytes = serde_json::to_vec(body).expect("checkpoint serializes");
    hex::encode(Sha256::digest(&bytes))
}

impl Checkpoint {
    pub fn new(shard: Shard, block_size: u64) -> Checkpoint {
        Checkpoint {
            format: FORMAT,
            shard,
            block_size,
            next_position: 0,
            stats: DealStats::default(),
        }
    }

    /// Loads a checkpoint, or `None` if the file does not exist.
    pub fn load(path: &Path) -> Result<Option<Checkpoint>, HarnessError> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => {
                return Err(HarnessError::Io {
                    path: path.to_path_buf(),
                    source,
                })
            }
        };
        let corrupt = |reason: String| HarnessError::CorruptCheckpoint {
            path: path.to_path_buf(),
            reason,
        };
        let sealed: Sealed = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        if digest(&sealed.body) != sealed.digest {
            return Err(corrupt("digest does not match contents".into()));
        }
        if sealed.body.format != FORMAT {
            return Err(corrupt(format!("unsupported format {}", sealed.body.format)));
        }
        Ok(Some(sealed.body))
    }

    /// Writes to a sibling temporary file and renames it into place, so an
    /// interrupted write leaves the previous checkpoint intact.
    pub fn save(&self, path: &Path) -> Result<(), HarnessError> {
        let io = |source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        };
        let sealed = Sealed {
            body: self.clone(),
            digest: digest(self),
        };
        let mut tmp_name = path.file_name().unwrap_or_default().to_os_string();
        tmp_name.push(".tmp");
        let tmp = path.with_file_name(tmp_name);
        let mut file = fs::File::create(&tmp).map_err(io)?;
        let json = serde_json::to_string_pretty(&sealed).expect("checkpoint serializes");
        file.write_all(json.as_bytes()).map_err(io)?;
        file.sync_all().map_err(io)?;
        fs::rename(&tmp, path).map_err(io)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::score::Score;

    #[test]
    fn save_load_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.json");
        assert!(Checkpoint::load(&path).unwrap().is_none());

        let mut cp = Checkpoint::new(Shard::new(2, 5).unwrap(), 100);
        cp.next_position = 300;
        cp.stats.record(Score::new(-4).unwrap(), 4);
        cp.save(&path).unwrap();
        assert_eq!(Checkpoint::load(&path).unwrap(), Some(cp));

        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replace("\"next_position\": 300", "\"next_position\": 400")).unwrap();
        assert!(matches!(
            Checkpoint::load(&path),
            Err(HarnessError::CorruptCheckpoint { .. })
        ));

        fs::write(&path, "{ not json").unwrap();
        assert!(matches!(
            Checkpoint::load(&path),
            Err(HarnessError::CorruptCheckpoint { .. })
        ));
    }
}
