use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use super::{RewriteSystem, SerialError};
use crate::scalar::ParamSpace;

/// Completed systems on disk, one file per (presentation hash, degree bound).
#[derive(Debug, Clone)]
pub struct CompletionCache {
    dir: PathBuf,
}

impl CompletionCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CompletionCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, hash: &str, bound: u64) -> PathBuf {
        self.dir.join(format!("{hash}-d{bound}.json"))
    }

    /// `Ok(None)` when absent; an error when present but corrupt or for another presentation.
    pub fn load(
        &self,
        hash: &str,
        bound: u64,
        params: &ParamSpace,
    ) -> Result<Option<RewriteSystem>, SerialError> {
        let path = self.path_for(hash, bound);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(SerialError::Malformed(e.to_string())),
        };
        let v: serde_json::Value = serde_json::from_str(&text)?;
        let (sys, found) = RewriteSystem::from_json(&v, params)?;
        if found != hash {
            return Err(SerialError::HashMismatch {
                found,
                expected: hash.to_string(),
            });
        }
        if sys.meta.verified_up_to != Some(bound) {
            return Err(SerialError::Malformed(
                "cached bound differs from file name".into(),
            ));
        }
        Ok(Some(sys))
    }

    pub fn store(&self, sys: &RewriteSystem, hash: &str, params: &ParamSpace) -> io::Result<PathBuf> {
        let bound = sys.meta.verified_up_to.unwrap_or(0);
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(hash, bound);
        let text = serde_json::to_string_pretty(&sys.to_json(params, hash))?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text + "\n")?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}
