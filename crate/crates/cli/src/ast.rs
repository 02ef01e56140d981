//! Declarations of a workspace file, in canonical order.

use std::collections::BTreeMap;

use rclkit_core::{FieldSpec, Scalar};

use crate::lexer::Pos;

pub type Coords = Vec<Scalar>;

/// A formal sum of generator names; empty for the zero object.
pub type ObjectSpec = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Named(String),
    Coords(Coords),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CategoryDecl {
    pub generators: Vec<String>,
    pub homs: BTreeMap<(String, String), Vec<String>>,
    pub identities: BTreeMap<String, Element>,
    /// `g ∘ f` by basis element names, in the basis of the composite's Hom space.
    pub products: BTreeMap<(String, String), Coords>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcategoryDecl {
    pub category: String,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorDecl {
    pub source: String,
    pub target: String,
    pub objects: BTreeMap<String, ObjectSpec>,
    pub maps: BTreeMap<String, Coords>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformationDecl {
    pub from: String,
    pub to: String,
    pub components: BTreeMap<String, Coords>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionDecl {
    pub left: String,
    pub right: String,
    pub unit: BTreeMap<String, Coords>,
    pub counit: BTreeMap<String, Coords>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecollementDecl {
    /// `(i*, i_*)`, `(i_*, i^!)`, `(j_!, j*)`, `(j*, j_*)`.
    pub adjunctions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleDecl {
    pub x: ObjectSpec,
    pub y: ObjectSpec,
    pub z: ObjectSpec,
    pub f: Coords,
    pub g: Coords,
    pub h: Coords,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangulatedDecl {
    pub category: String,
    pub shift: String,
    pub triangles: BTreeMap<String, TriangleDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactDecl {
    pub functor: String,
    pub source: String,
    pub target: String,
    /// Components of `F∘T ⇒ T'∘F`; identities when empty.
    pub phi: BTreeMap<String, Coords>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Members {
    All,
    List(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationDecl {
    pub triangulated: String,
    pub z: Members,
    pub d: Members,
    pub fixed: BTreeMap<String, TriangleDecl>,
    pub cofixed: BTreeMap<String, TriangleDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriRecollementDecl {
    pub recollement: String,
    pub left: String,
    pub middle: String,
    pub right: String,
    /// Exactness data for `i*, i_*, i^!, j_!, j*, j_*`.
    pub exact: Vec<String>,
    pub mutation: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Declarations {
    pub format_version: u32,
    pub field: FieldSpec,
    pub categories: BTreeMap<String, CategoryDecl>,
    pub subcategories: BTreeMap<String, SubcategoryDecl>,
    pub functors: BTreeMap<String, FunctorDecl>,
    pub transformations: BTreeMap<String, TransformationDecl>,
    pub adjunctions: BTreeMap<String, AdjunctionDecl>,
    pub recollements: BTreeMap<String, RecollementDecl>,
    pub triangulated: BTreeMap<String, TriangulatedDecl>,
    pub exact: BTreeMap<String, ExactDecl>,
    pub mutations: BTreeMap<String, MutationDecl>,
    pub trirecollements: BTreeMap<String, TriRecollementDecl>,
}

impl Default for Declarations {
    fn default() -> Self {
        Declarations {
            format_version: 1,
            field: FieldSpec::Rationals,
            categories: BTreeMap::new(),
            subcategories: BTreeMap::new(),
            functors: BTreeMap::new(),
            transformations: BTreeMap::new(),
            adjunctions: BTreeMap::new(),
            recollements: BTreeMap::new(),
            triangulated: BTreeMap::new(),
            exact: BTreeMap::new(),
            mutations: BTreeMap::new(),
            trirecollements: BTreeMap::new(),
        }
    }
}

/// Parsed declarations plus the position of each declaration keyed by
/// `(kind, name)`.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub decls: Declarations,
    pub positions: BTreeMap<(&'static str, String), Pos>,
}

impl Workspace {
    pub fn pos(&self, kind: &'static str, name: &str) -> Pos {
        self.positions.get(&(kind, name.to_string())).copied().unwrap_or_default()
    }
}
