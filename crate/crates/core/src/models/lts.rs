use std::fmt::Debug;
use std::hash::Hash;

use super::{ActionId, Violation};
use crate::solvers::Bounds;

/// A finitely branching labelled transition system given by a machine.
pub trait Lts: PartialEq + 'static {
    type Conf: Clone + Eq + Hash + Debug + Send + Sync + 'static;

    fn action_names(&self) -> &[String];

    /// Successors in transition-id order.
    fn successors(&self, conf: &Self::Conf) -> Vec<(ActionId, Self::Conf)>;

    /// Whether the configuration lies inside the truncation.
    fn within(&self, conf: &Self::Conf, bounds: &Bounds) -> bool;

    /// Clamp a configuration into the truncation, for systems in which larger
    /// counters only enable more behaviour. `None` for systems that are not
    /// monotone in their counters.
    fn saturate(&self, _conf: &Self::Conf, _bounds: &Bounds) -> Option<Self::Conf> {
        None
    }

    /// Spoiler-side over-approximation of the configurations beyond the
    /// truncation: they are merged into one representative that may move
    /// like any of them. Identity inside the truncation; `None` when the
    /// system has no such abstraction.
    fn widen(&self, _conf: &Self::Conf, _bounds: &Bounds) -> Option<Self::Conf> {
        None
    }

    /// Successors in the widened system, in transition-id order.
    fn widened_successors(&self, _conf: &Self::Conf, _bounds: &Bounds) -> Option<Vec<(ActionId, Self::Conf)>> {
        None
    }

    /// Whether `big` can do everything `small` can, by monotonicity. Only
    /// ever asked about configurations of the same system.
    fn covers(&self, big: &Self::Conf, small: &Self::Conf) -> bool {
        big == small
    }

    fn describe(&self, conf: &Self::Conf) -> String;

    fn violations(&self) -> Vec<Violation>;
}
