use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

use crate::args::Format;
use crate::error::CliError;
use crate::record::ResultRecord;

pub fn render(record: &ResultRecord, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(record)
                .map_err(|e| CliError::Usage(format!("cannot serialize result: {e}")))?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => Ok(record.payload.table().to_csv()),
    }
}

/// Writes through a temporary file in the target directory, then renames it
/// into place. Without a path the text goes to standard output.
pub fn write(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let Some(path) = path else {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(text.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e));
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(text.as_bytes()).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    log::info!("wrote {}", path.display());
    Ok(())
}
