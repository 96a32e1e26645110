//! Finite structures in the three contexts, the maps between them, and the
//! constructions (kernels, quotients, products) the rest of the crate needs.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub mod builders;
mod construct;
mod format;
mod maps;
mod subobjects;
mod validate;

pub use construct::{product_in_context, quotient, ProductInContext};
pub(crate) use construct::pair_structure;
pub use format::{load_structure, save_structure, ParseError};
pub use maps::{
    final_kernel, final_map, final_object, has_null_support, initial_object, is_mono, kernel,
    Mono, StructureMap,
};
pub use subobjects::{enumerate_subobjects, enumerate_subobjects_with, generated, Subobject};
pub use validate::{validate_structure, ValidationReport, Violation};

/// Which ambient category a structure lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Context {
    /// Groups.
    Gp,
    /// Groupoids over a fixed object set.
    GpdS,
    /// Groups together with the empty algebra.
    GpCirc,
}

impl Context {
    pub fn keyword(self) -> &'static str {
        match self {
            Context::Gp => "gp",
            Context::GpdS => "gpds",
            Context::GpCirc => "gpcirc",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "gp" => Some(Context::Gp),
            "gpds" => Some(Context::GpdS),
            "gpcirc" => Some(Context::GpCirc),
            _ => None,
        }
    }

    /// Initial and final objects coincide.
    pub fn is_pointed(self) -> bool {
        self == Context::Gp
    }

    /// Bourn-normal monomorphisms have an essentially unique witness relation.
    pub fn is_protomodular(self) -> bool {
        self != Context::GpCirc
    }

    /// Name of the binary operation the context requires.
    pub fn binary_op(self) -> &'static str {
        match self {
            Context::Gp | Context::GpCirc => "mul",
            Context::GpdS => "comp",
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// An operation table. Binary tables are stored row-major; `None` marks an
/// undefined entry (only groupoid composition is partial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Table {
    Unary(Vec<usize>),
    Binary(Vec<Option<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operation {
    pub name: String,
    pub table: Table,
}

impl Operation {
    pub fn unary(name: impl Into<String>, table: Vec<usize>) -> Self {
        Operation { name: name.into(), table: Table::Unary(table) }
    }

    pub fn binary(name: impl Into<String>, table: Vec<Option<usize>>) -> Self {
        Operation { name: name.into(), table: Table::Binary(table) }
    }

    pub fn total_binary(name: impl Into<String>, table: Vec<usize>) -> Self {
        Self::binary(name, table.into_iter().map(Some).collect())
    }

    pub fn arity(&self) -> usize {
        match self.table {
            Table::Unary(_) => 1,
            Table::Binary(_) => 2,
        }
    }

    pub fn is_partial(&self) -> bool {
        matches!(&self.table, Table::Binary(t) if t.iter().any(Option::is_none))
    }
}

/// Object data of a groupoid over the object set `0..objects`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidData {
    pub objects: usize,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    /// Identity arrow of each object.
    pub ids: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("operation `{op}`: table has {found} entries, expected {expected}")]
    TableShape { op: String, expected: usize, found: usize },
    #[error("operation `{op}`: entry {entry} is outside the carrier of size {size}")]
    EntryOutOfRange { op: String, entry: usize, size: usize },
    #[error("operation `{op}` is partial, which only groupoid composition may be")]
    UnexpectedPartial { op: String },
    #[error("groupoid data is required in context gpds and forbidden elsewhere")]
    GroupoidDataMismatch,
    #[error("groupoid data: {0}")]
    GroupoidShape(String),
    #[error("{found} element names given for a carrier of size {size}")]
    NameCount { size: usize, found: usize },
    #[error("subset is not closed: element {0} escapes")]
    NotClosed(usize),
    #[error("element {element} is outside the carrier of size {size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("maps between contexts {0} and {1}")]
    ContextMismatch(Context, Context),
    #[error("map has {found} entries, domain has {expected} elements")]
    MapLength { expected: usize, found: usize },
    #[error("map does not preserve `{op}` at {args:?}")]
    NotHomomorphism { op: String, args: Vec<usize> },
    #[error("map is not constant on objects at arrow {0}")]
    NotConstantOnObjects(usize),
    #[error("map identifies {0} and {1}, so it is not a monomorphism")]
    NotInjective(usize, usize),
    #[error("relation is not compatible with `{op}` at {args:?}")]
    NotCompatible { op: String, args: Vec<usize> },
    #[error("relation is on {found} elements, structure has {expected}")]
    RelationSize { expected: usize, found: usize },
}

/// A finite algebra (or groupoid) with dense carrier `0..size`.
///
/// Construction checks table shapes only; the context axioms are checked by
/// [`validate_structure`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteStructure {
    context: Context,
    size: usize,
    names: Option<Vec<String>>,
    groupoid: Option<GroupoidData>,
    ops: Vec<Operation>,
}

impl FiniteStructure {
    pub fn new(
        context: Context,
        size: usize,
        ops: Vec<Operation>,
        groupoid: Option<GroupoidData>,
    ) -> Result<Self, StructureError> {
        if (context == Context::GpdS) != groupoid.is_some() {
            return Err(StructureError::GroupoidDataMismatch);
        }
        for op in &ops {
            let expected = match op.table {
                Table::Unary(_) => size,
                Table::Binary(_) => size * size,
            };
            let entries: Vec<Option<usize>> = match &op.table {
                Table::Unary(t) => t.iter().copied().map(Some).collect(),
                Table::Binary(t) => t.clone(),
            };
            if entries.len() != expected {
                return Err(StructureError::TableShape {
                    op: op.name.clone(),
                    expected,
                    found: entries.len(),
                });
            }
            if let Some(entry) = entries.iter().flatten().find(|&&e| e >= size) {
                return Err(StructureError::EntryOutOfRange {
                    op: op.name.clone(),
                    entry: *entry,
                    size,
                });
            }
            if context != Context::GpdS && op.is_partial() {
                return Err(StructureError::UnexpectedPartial { op: op.name.clone() });
            }
        }
        if let Some(g) = &groupoid {
            if g.src.len() != size || g.tgt.len() != size {
                return Err(StructureError::GroupoidShape(format!(
                    "src/tgt must list {size} objects"
                )));
            }
            if g.ids.len() != g.objects {
                return Err(StructureError::GroupoidShape(format!(
                    "id must list {} arrows",
                    g.objects
                )));
            }
            if let Some(o) = g.src.iter().chain(&g.tgt).find(|&&o| o >= g.objects) {
                return Err(StructureError::GroupoidShape(format!("object {o} out of range")));
            }
            if let Some(a) = g.ids.iter().find(|&&a| a >= size) {
                return Err(StructureError::GroupoidShape(format!("identity arrow {a} out of range")));
            }
        }
        Ok(FiniteStructure { context, size, names: None, groupoid, ops })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, StructureError> {
        if names.len() != self.size {
            return Err(StructureError::NameCount { size: self.size, found: names.len() });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn context(&self) -> Context {
        self.context
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn groupoid(&self) -> Option<&GroupoidData> {
        self.groupoid.as_ref()
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn op(&self, name: &str) -> Option<&Operation> {
        self.ops.iter().find(|op| op.name == name)
    }

    /// The context's binary operation (`mul` or `comp`), if defined at `(a, b)`.
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        match self.op(self.context.binary_op()).map(|op| &op.table) {
            Some(Table::Binary(t)) => t[a * self.size + b],
            _ => None,
        }
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        match self.op("inv").map(|op| &op.table) {
            Some(Table::Unary(t)) => Some(t[a]),
            _ => None,
        }
    }

    /// Applies an operation to an argument tuple of the right arity.
    pub fn apply(&self, op: &Operation, args: &[usize]) -> Option<usize> {
        match (&op.table, args) {
            (Table::Unary(t), [a]) => Some(t[*a]),
            (Table::Binary(t), [a, b]) => t[a * self.size + b],
            _ => None,
        }
    }

    pub fn objects(&self) -> usize {
        self.groupoid.as_ref().map_or(1, |g| g.objects)
    }

    pub fn src(&self, a: usize) -> usize {
        self.groupoid.as_ref().map_or(0, |g| g.src[a])
    }

    pub fn tgt(&self, a: usize) -> usize {
        self.groupoid.as_ref().map_or(0, |g| g.tgt[a])
    }

    /// Whether `(a, b)` is an element of the product in context: always true
    /// outside groupoids, same source and target inside.
    pub fn is_parallel(&self, a: usize, b: usize) -> bool {
        match &self.groupoid {
            Some(g) => g.src[a] == g.src[b] && g.tgt[a] == g.tgt[b],
            None => true,
        }
    }

    pub fn is_endo(&self, a: usize) -> bool {
        self.src(a) == self.tgt(a)
    }

    /// Unit of a group, computed as `x·x⁻¹` for `x = 0`.
    pub fn unit(&self) -> Option<usize> {
        if self.context == Context::GpdS || self.size == 0 {
            return None;
        }
        self.inv(0).and_then(|i| self.mul(0, i))
    }

    /// Image of the initial object: the subalgebra generated by the empty set.
    /// The unit in groups, the identity arrows in groupoids, nothing in the
    /// variety with the empty algebra.
    pub fn constants(&self) -> Vec<usize> {
        match self.context {
            Context::Gp => self.unit().into_iter().collect(),
            Context::GpdS => {
                let mut ids = self.groupoid.as_ref().map(|g| g.ids.clone()).unwrap_or_default();
                ids.sort_unstable();
                ids.dedup();
                ids
            }
            Context::GpCirc => Vec::new(),
        }
    }

    /// Restricts to a closed subset. `members` must be sorted and free of
    /// duplicates; element `members[i]` becomes `i`.
    pub fn restrict(&self, members: &[usize]) -> Result<FiniteStructure, StructureError> {
        let mut index = vec![usize::MAX; self.size];
        for (i, &m) in members.iter().enumerate() {
            if m >= self.size {
                return Err(StructureError::ElementOutOfRange { element: m, size: self.size });
            }
            index[m] = i;
        }
        let lookup = |e: usize| -> Result<usize, StructureError> {
            match index[e] {
                usize::MAX => Err(StructureError::NotClosed(e)),
                i => Ok(i),
            }
        };
        let k = members.len();
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let table = match &op.table {
                Table::Unary(t) => {
                    Table::Unary(members.iter().map(|&m| lookup(t[m])).collect::<Result<_, _>>()?)
                }
                Table::Binary(t) => {
                    let mut out = Vec::with_capacity(k * k);
                    for &a in members {
                        for &b in members {
                            out.push(match t[a * self.size + b] {
                                Some(c) => Some(lookup(c)?),
                                None => None,
                            });
                        }
                    }
                    Table::Binary(out)
                }
            };
            ops.push(Operation { name: op.name.clone(), table });
        }
        let groupoid = match &self.groupoid {
            Some(g) => Some(GroupoidData {
                objects: g.objects,
                src: members.iter().map(|&m| g.src[m]).collect(),
                tgt: members.iter().map(|&m| g.tgt[m]).collect(),
                ids: g.ids.iter().map(|&i| lookup(i)).collect::<Result<_, _>>()?,
            }),
            None => None,
        };
        let mut out = FiniteStructure::new(self.context, k, ops, groupoid)?;
        if let Some(names) = &self.names {
            out.names = Some(members.iter().map(|&m| names[m].clone()).collect());
        }
        Ok(out)
    }
}
