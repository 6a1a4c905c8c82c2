//! Fixed outdoor AP sites from a plain text file: one `x y` pair per line
//! in metres, `#` starts a comment, blank lines are skipped.

use std::path::Path;

use crate::CliError;

pub fn load(path: &Path) -> Result<Vec<(f64, f64)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|msg| CliError::Config(format!("{}: {msg}", path.display())))
}

pub fn parse(text: &str) -> Result<Vec<(f64, f64)>, String> {
    let mut points = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(xs), Some(ys), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(format!("line {}: expected `x y`, got `{line}`", idx + 1));
        };
        let x: f64 = xs
            .parse()
            .map_err(|_| format!("line {}: bad x coordinate `{xs}`", idx + 1))?;
        let y: f64 = ys
            .parse()
            .map_err(|_| format!("line {}: bad y coordinate `{ys}`", idx + 1))?;
        if !x.is_finite() || !y.is_finite() {
            return Err(format!("line {}: coordinates must be finite", idx + 1));
        }
        points.push((x, y));
    }
    if points.is_empty() {
        return Err(String::from("no coordinates found"));
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::parse;

    #[test]
    fn pairs_comments_and_blanks() {
        let pts = parse("# site plan\n0 0\n\n12.5 30.0 # corner\n").unwrap();
        assert_eq!(pts, vec![(0.0, 0.0), (12.5, 30.0)]);
    }

    #[test]
    fn errors_name_the_line() {
        assert!(parse("0 0\n1 2 3\n").unwrap_err().contains("line 2"));
        assert!(parse("0 oops\n").unwrap_err().contains("bad y"));
        assert!(parse("nan 0\n").unwrap_err().contains("finite"));
        assert!(parse("# only comments\n").unwrap_err().contains("no coordinates"));
    }
}
