//! Hierarchical coordinates for vertices and faces of the universal graph.
//!
//! The base triangle has vertices `B:0`, `B:1`, `B:2` and two faces `A`
//! (boundary `B:0 B:1 B:2`) and `B` (boundary `B:0 B:2 B:1`). A face at depth
//! `d` has `2d + 3` boundary vertices; its expansion adds a center and one
//! spoke of `d + 1` subdivision vertices per boundary vertex, and child `c`
//! is the face between spokes `c` and `c + 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed address `{0}`")]
pub struct AddressParseError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Root {
    A,
    B,
}

/// A face of some truncation, named by its root face and child indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId {
    pub root: Root,
    pub path: Vec<u16>,
}

impl FaceId {
    pub fn root(root: Root) -> Self {
        FaceId { root, path: Vec::new() }
    }

    /// Level of the face: it is a face of every truncation from this level on.
    pub fn depth(&self) -> usize {
        self.path.len()
    }

    /// Number of boundary vertices (and edges).
    pub fn boundary_len(&self) -> usize {
        2 * self.depth() + 3
    }

    /// Subdivision vertices per spoke when this face is expanded.
    pub fn spoke_len(&self) -> usize {
        self.depth() + 1
    }

    pub fn child(&self, index: usize) -> FaceId {
        debug_assert!(index < self.boundary_len());
        let mut path = self.path.clone();
        path.push(index as u16);
        FaceId { root: self.root, path }
    }

    pub fn parent(&self) -> Option<FaceId> {
        if self.path.is_empty() {
            return None;
        }
        let mut path = self.path.clone();
        path.pop();
        Some(FaceId { root: self.root, path })
    }

    /// `true` if `self` equals `other` or lies inside it.
    pub fn is_within(&self, other: &FaceId) -> bool {
        self.root == other.root && self.path.starts_with(&other.path)
    }

    /// Child indices all in range for their parents' boundary lengths.
    pub fn is_well_formed(&self) -> bool {
        self.path
            .iter()
            .enumerate()
            .all(|(d, &c)| (c as usize) < 2 * d + 3)
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.root {
            Root::A => "A",
            Root::B => "B",
        })?;
        for c in &self.path {
            write!(f, ".{c}")?;
        }
        Ok(())
    }
}

impl FromStr for FaceId {
    type Err = AddressParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AddressParseError(s.to_string());
        let mut parts = s.split('.');
        let root = match parts.next() {
            Some("A") => Root::A,
            Some("B") => Root::B,
            _ => return Err(err()),
        };
        let path = parts
            .map(|p| p.parse::<u16>().map_err(|_| err()))
            .collect::<Result<Vec<_>, _>>()?;
        let face = FaceId { root, path };
        if !face.is_well_formed() {
            return Err(err());
        }
        Ok(face)
    }
}

/// The address of a vertex of the universal graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GAddress {
    Base(u8),
    Center(FaceId),
    /// Subdivision vertex `pos` (counted from the boundary, starting at 1)
    /// on the spoke towards boundary vertex `spoke`.
    Sub { face: FaceId, spoke: u16, pos: u16 },
}

impl GAddress {
    /// The truncation level at which this vertex first appears.
    pub fn level(&self) -> usize {
        match self {
            GAddress::Base(_) => 0,
            GAddress::Center(f) | GAddress::Sub { face: f, .. } => f.depth() + 1,
        }
    }

    /// The face whose expansion created this vertex.
    pub fn owner(&self) -> Option<&FaceId> {
        match self {
            GAddress::Base(_) => None,
            GAddress::Center(f) | GAddress::Sub { face: f, .. } => Some(f),
        }
    }

    pub fn is_well_formed(&self) -> bool {
        match self {
            GAddress::Base(i) => *i < 3,
            GAddress::Center(f) => f.is_well_formed(),
            GAddress::Sub { face, spoke, pos } => {
                face.is_well_formed()
                    && (*spoke as usize) < face.boundary_len()
                    && *pos >= 1
                    && (*pos as usize) <= face.spoke_len()
            }
        }
    }
}

impl fmt::Display for GAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GAddress::Base(i) => write!(f, "B:{i}"),
            GAddress::Center(face) => write!(f, "C:{face}"),
            GAddress::Sub { face, spoke, pos } => write!(f, "S:{face}:{spoke}:{pos}"),
        }
    }
}

impl FromStr for GAddress {
    type Err = AddressParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AddressParseError(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let addr = match parts.as_slice() {
            ["B", i] => GAddress::Base(i.parse().map_err(|_| err())?),
            ["C", face] => GAddress::Center(face.parse()?),
            ["S", face, spoke, pos] => GAddress::Sub {
                face: face.parse()?,
                spoke: spoke.parse().map_err(|_| err())?,
                pos: pos.parse().map_err(|_| err())?,
            },
            _ => return Err(err()),
        };
        if !addr.is_well_formed() {
            return Err(err());
        }
        Ok(addr)
    }
}

impl Serialize for GAddress {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GAddress {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for FaceId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FaceId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn formats() {
        let f: FaceId = "A.0.3".parse().unwrap();
        assert_eq!(f.depth(), 2);
        assert_eq!(f.boundary_len(), 7);
        assert_eq!(GAddress::Center(f.clone()).to_string(), "C:A.0.3");
        let s = GAddress::Sub { face: f, spoke: 6, pos: 3 };
        assert_eq!(s.to_string(), "S:A.0.3:6:3");
        assert_eq!(s.level(), 3);
        assert_eq!("B:2".parse::<GAddress>().unwrap(), GAddress::Base(2));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!("A.3".parse::<FaceId>().is_err());
        assert!("A.2.5".parse::<FaceId>().is_err());
        assert!("A.2.4.6".parse::<FaceId>().is_ok());
        assert!("A.2.4.7".parse::<FaceId>().is_err());
        assert!("S:A:3:1".parse::<GAddress>().is_err());
        assert!("S:A:2:2".parse::<GAddress>().is_err());
        assert!("B:3".parse::<GAddress>().is_err());
        assert!("X:1".parse::<GAddress>().is_err());
    }

    fn face_strategy() -> impl Strategy<Value = FaceId> {
        (any::<bool>(), prop::collection::vec(any::<u16>(), 0..6)).prop_map(|(r, raw)| FaceId {
            root: if r { Root::A } else { Root::B },
            path: raw.iter().enumerate().map(|(d, &c)| c % (2 * d as u16 + 3)).collect(),
        })
    }

    proptest! {
        #[test]
        fn address_text_roundtrip(face in face_strategy(), spoke in any::<u16>(), pos in any::<u16>(), kind in 0u8..3) {
            let addr = match kind {
                0 => GAddress::Base((spoke % 3) as u8),
                1 => GAddress::Center(face),
                _ => {
                    let spoke = spoke % face.boundary_len() as u16;
                    let pos = 1 + pos % face.spoke_len() as u16;
                    GAddress::Sub { face, spoke, pos }
                }
            };
            prop_assert_eq!(addr.to_string().parse::<GAddress>().unwrap(), addr);
        }
    }
}
