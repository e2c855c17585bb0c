//! Reader for TSPLIB files with `EUC_2D` or `CEIL_2D` edge weights.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceKind, Point};

/// Parses a TSPLIB `NODE_COORD_SECTION` file.
///
/// Node ids must be `1..=DIMENSION`; node `k` becomes index `k - 1`.
pub fn parse_tsplib(text: &str) -> Result<Instance> {
    let mut name = None;
    let mut dimension: Option<usize> = None;
    let mut kind: Option<InstanceKind> = None;
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));
    let mut coord_section_line = None;

    for (line, content) in lines.by_ref() {
        if content.is_empty() {
            continue;
        }
        if content == "NODE_COORD_SECTION" {
            coord_section_line = Some(line);
            break;
        }
        if content == "EOF" {
            break;
        }
        let (key, value) = match content.split_once(':') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => {
                // "KEY VALUE" without a colon appears in a few files
                match content.split_once(char::is_whitespace) {
                    Some((k, v)) => (k.trim(), v.trim()),
                    None => {
                        return Err(Error::parse(
                            line,
                            format!("unrecognized header line `{content}`"),
                        ))
                    }
                }
            }
        };
        match key {
            "NAME" => name = Some(value.to_string()),
            "TYPE" => {
                if value != "TSP" {
                    return Err(Error::parse(line, format!("unsupported TYPE `{value}`")));
                }
            }
            "DIMENSION" => {
                let d = value
                    .parse()
                    .map_err(|_| Error::parse(line, format!("invalid DIMENSION `{value}`")))?;
                dimension = Some(d);
            }
            "EDGE_WEIGHT_TYPE" => {
                kind = Some(match value {
                    "EUC_2D" => InstanceKind::TsplibEuc2d,
                    "CEIL_2D" => InstanceKind::TsplibCeil2d,
                    other => {
                        return Err(Error::parse(
                            line,
                            format!("unsupported EDGE_WEIGHT_TYPE `{other}`"),
                        ))
                    }
                });
            }
            _ => {}
        }
    }

    let Some(section_line) = coord_section_line else {
        return Err(Error::parse(
            text.lines().count().max(1),
            "missing NODE_COORD_SECTION",
        ));
    };
    let n = dimension
        .ok_or_else(|| Error::parse(section_line, "missing DIMENSION before NODE_COORD_SECTION"))?;
    let kind = kind.ok_or_else(|| Error::parse(section_line, "missing EDGE_WEIGHT_TYPE"))?;

    let mut points: Vec<Option<Point>> = vec![None; n];
    let mut read = 0;
    let mut last_line = section_line;
    for (line, content) in lines {
        last_line = line;
        if content.is_empty() {
            continue;
        }
        if content == "EOF" || read == n {
            break;
        }
        let mut fields = content.split_whitespace();
        let (Some(id), Some(x), Some(y), None) =
            (fields.next(), fields.next(), fields.next(), fields.next())
        else {
            return Err(Error::parse(
                line,
                format!("malformed coordinate line `{content}`"),
            ));
        };
        let id: usize = id
            .parse()
            .map_err(|_| Error::parse(line, format!("invalid node id `{id}`")))?;
        let x: f64 = x
            .parse()
            .map_err(|_| Error::parse(line, format!("invalid x coordinate `{x}`")))?;
        let y: f64 = y
            .parse()
            .map_err(|_| Error::parse(line, format!("invalid y coordinate `{y}`")))?;
        if id == 0 || id > n {
            return Err(Error::parse(line, format!("node id {id} outside 1..={n}")));
        }
        if points[id - 1].replace(Point::new(x, y)).is_some() {
            return Err(Error::parse(line, format!("duplicate node id {id}")));
        }
        read += 1;
    }
    if read != n {
        return Err(Error::parse(
            last_line,
            format!("expected {n} coordinates, found {read}"),
        ));
    }
    let points = points
        .into_iter()
        .map(|p| p.expect("all ids seen"))
        .collect();
    let inst = Instance::from_points(kind, points)?;
    Ok(match name {
        Some(name) => inst.with_name(name),
        None => inst,
    })
}

pub fn read_tsplib(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_tsplib(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "NAME : tiny4
COMMENT : four corners
TYPE : TSP
DIMENSION : 4
EDGE_WEIGHT_TYPE : EUC_2D
NODE_COORD_SECTION
1 0 0
2 3 4
3 3 0
4 0 4
EOF
";

    #[test]
    fn minimal_file() {
        let inst = parse_tsplib(SMALL).unwrap();
        assert_eq!(inst.n(), 4);
        assert_eq!(inst.kind(), InstanceKind::TsplibEuc2d);
        assert_eq!(inst.name(), Some("tiny4"));
        assert_eq!(inst.cost(0, 1), 5.0);
        assert_eq!(inst.points()[1], Point::new(3.0, 4.0));
    }

    #[test]
    fn ceil_2d_kind() {
        let text = SMALL.replace("EUC_2D", "CEIL_2D");
        assert_eq!(
            parse_tsplib(&text).unwrap().kind(),
            InstanceKind::TsplibCeil2d
        );
    }

    #[test]
    fn large_dimension_header() {
        let mut text = String::from("NAME: rl5915\nTYPE: TSP\nDIMENSION: 5915\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n");
        for k in 1..=5915 {
            text.push_str(&format!("{k} {}.5 {}\n", k * 7 % 1000, k * 13 % 997));
        }
        text.push_str("EOF\n");
        let inst = parse_tsplib(&text).unwrap();
        assert_eq!(inst.n(), 5915);
        assert!(!inst.is_materialized());
    }

    #[test]
    fn explicit_weights_rejected() {
        let text = SMALL.replace("EUC_2D", "EXPLICIT");
        let err = parse_tsplib(&text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, .. }), "{err}");
    }

    #[test]
    fn missing_dimension() {
        let text = SMALL.replace("DIMENSION : 4\n", "");
        assert!(matches!(
            parse_tsplib(&text),
            Err(Error::Parse { line: 5, .. })
        ));
    }

    #[test]
    fn malformed_coordinate_names_line() {
        let text = SMALL.replace("3 3 0", "3 3");
        let err = parse_tsplib(&text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 9, .. }), "{err}");
        let text = SMALL.replace("2 3 4", "2 x 4");
        assert!(matches!(
            parse_tsplib(&text),
            Err(Error::Parse { line: 8, .. })
        ));
    }

    #[test]
    fn short_coordinate_section() {
        let text = SMALL.replace("4 0 4\n", "");
        assert!(matches!(parse_tsplib(&text), Err(Error::Parse { .. })));
    }
}
