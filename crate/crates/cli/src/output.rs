//! Artifact writing. Every file is staged in a temporary file next to its
//! destination and renamed into place only after all files of a run are staged.

use std::io::Write;
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::CliError;

pub struct Artifact {
    pub path: PathBuf,
    pub contents: String,
}

fn staging_dir(path: &Path) -> &Path {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    }
}

/// Write all artifacts or none of them.
pub fn write_all(artifacts: &[Artifact]) -> Result<(), CliError> {
    let io = |path: &Path, e: std::io::Error| {
        CliError::Numerical(format!("cannot write {}: {e}", path.display()))
    };
    let mut staged = Vec::with_capacity(artifacts.len());
    for a in artifacts {
        let mut tmp = NamedTempFile::new_in(staging_dir(&a.path)).map_err(|e| io(&a.path, e))?;
        tmp.write_all(a.contents.as_bytes())
            .map_err(|e| io(&a.path, e))?;
        #[cfg(unix)]
        {
            use std::os::unix::fs::PermissionsExt;
            // Temporaries are created 0600; results are ordinary files.
            tmp.as_file()
                .set_permissions(std::fs::Permissions::from_mode(0o644))
                .map_err(|e| io(&a.path, e))?;
        }
        tmp.as_file().sync_all().map_err(|e| io(&a.path, e))?;
        staged.push((tmp, &a.path));
    }
    // Temporaries that are not persisted are removed on drop.
    for (tmp, path) in staged {
        tmp.persist(path).map_err(|e| io(path, e.error))?;
    }
    Ok(())
}

/// Send one rendering to `out`, or to stdout if no path was given.
pub fn emit(out: Option<&Path>, contents: String) -> Result<(), CliError> {
    match out {
        Some(path) => write_all(&[Artifact {
            path: path.to_path_buf(),
            contents,
        }]),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout
                .write_all(contents.as_bytes())
                .and_then(|_| stdout.flush())
            {
                // A closed pipe (e.g. `| head`) is the reader's choice, not a failure.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(|e| CliError::Numerical(format!("cannot write to stdout: {e}"))),
            }
        }
    }
}
