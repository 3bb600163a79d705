//! Shape interchange format.
//!
//! Polygons are `{"vertices": [[x, y], ...]}`; polyhedra add
//! `"faces": [[i0, i1, ...], ...]` with 0-based vertex indices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Polygon, Polyhedron, Vec2, Vec3};

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Polygon(Polygon),
    Polyhedron(Polyhedron),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonFile {
    vertices: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyhedronFile {
    vertices: Vec<[f64; 3]>,
    faces: Vec<Vec<usize>>,
}

/// Parses either shape kind; the presence of `"faces"` selects polyhedra.
/// `allow_nonsimple` skips the self-intersection test for polygons.
pub fn parse_shape(text: &str, allow_nonsimple: bool) -> Result<Shape> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    if value.get("faces").is_some() {
        let f: PolyhedronFile =
            serde_json::from_value(value).map_err(|e| Error::Parse(format!("polyhedron: {e}")))?;
        let vertices = f.vertices.into_iter().map(Vec3::from).collect();
        Ok(Shape::Polyhedron(Polyhedron::new(vertices, f.faces)?))
    } else {
        let f: PolygonFile =
            serde_json::from_value(value).map_err(|e| Error::Parse(format!("polygon: {e}")))?;
        let vertices: Vec<Vec2> = f.vertices.into_iter().map(Vec2::from).collect();
        let poly = if allow_nonsimple {
            Polygon::new_allow_nonsimple(vertices)?
        } else {
            Polygon::new(vertices)?
        };
        Ok(Shape::Polygon(poly))
    }
}

pub fn parse_polygon(text: &str, allow_nonsimple: bool) -> Result<Polygon> {
    match parse_shape(text, allow_nonsimple)? {
        Shape::Polygon(p) => Ok(p),
        Shape::Polyhedron(_) => Err(Error::InvalidArgument(
            "expected a polygon, found a polyhedron".into(),
        )),
    }
}

pub fn polygon_to_json(p: &Polygon) -> String {
    serde_json::to_string(&PolygonFile {
        vertices: p.vertices().iter().map(|&v| v.into()).collect(),
    })
    .expect("plain numeric data serializes")
}

pub fn polyhedron_to_json(p: &Polyhedron) -> String {
    serde_json::to_string(&PolyhedronFile {
        vertices: p.vertices().iter().map(|&v| v.into()).collect(),
        faces: p.faces().to_vec(),
    })
    .expect("plain numeric data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let sq = parse_polygon(r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#, false).unwrap();
        assert_eq!(parse_polygon(&polygon_to_json(&sq), false).unwrap(), sq);
        let cube = Polyhedron::cuboid(Vec3::ZERO, Vec3::new(0.5, 0.5, 0.5));
        match parse_shape(&polyhedron_to_json(&cube), false).unwrap() {
            Shape::Polyhedron(p) => assert_eq!(p, cube),
            _ => panic!("expected a polyhedron"),
        }
    }

    #[test]
    fn rejects_malformed_and_bowtie() {
        assert!(matches!(parse_shape("{", false), Err(Error::Parse(_))));
        assert!(matches!(
            parse_shape(r#"{"vertices": [[0,0,0]]}"#, false),
            Err(Error::Parse(_))
        ));
        let bowtie = r#"{"vertices": [[0,0],[1,1],[1,0],[0,1]]}"#;
        assert!(matches!(
            parse_shape(bowtie, false),
            Err(Error::InvalidPolygon(_))
        ));
        assert!(parse_shape(bowtie, true).is_ok());
    }
}
