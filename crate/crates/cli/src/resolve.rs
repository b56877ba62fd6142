//! Turning flag values into groups, spaces and points.
//!
//! Names are looked up in the gallery registry first; anything else is read
//! as a path to a group or action file.

use std::path::Path;

use binact_core::io::{load_action, load_group};
use binact_core::registry::{self, GallerySpace};
use binact_core::{BinaryGSpace, Error, FiniteGroup, PointSet, WindowedIntSpace};
use serde_json::{json, Value};

use crate::report::{CliError, CliResult};

pub enum Space {
    Finite(BinaryGSpace),
    Windowed(WindowedIntSpace),
}

fn lookup<T>(flag: &str, name: &str, by_name: Result<T, Error>, load: impl FnOnce(&Path) -> Result<T, Error>) -> CliResult<T> {
    match by_name {
        Ok(v) => Ok(v),
        Err(Error::UnknownName(_)) => {
            let path = Path::new(name);
            if path.is_file() {
                load(path).map_err(|e| CliError::from(e).for_flag(flag))
            } else {
                Err(CliError::input(format!(
                    "`{name}` is neither a known name nor a readable file"
                ))
                .for_flag(flag))
            }
        }
        Err(e) => Err(CliError::from(e).for_flag(flag)),
    }
}

fn check_order(flag: &str, order: usize, max_order: usize) -> CliResult<()> {
    if order > max_order {
        return Err(CliError::input(format!(
            "group order {order} exceeds the limit {max_order} (raise it with --max-order)"
        ))
        .for_flag(flag));
    }
    Ok(())
}

pub fn group(name: &str, max_order: usize) -> CliResult<FiniteGroup> {
    let g = lookup("--group", name, registry::group_by_name(name), load_group)?;
    check_order("--group", g.order(), max_order)?;
    Ok(g)
}

pub fn space(name: &str, max_order: usize) -> CliResult<Space> {
    let s = lookup(
        "--space",
        name,
        registry::space_by_name(name),
        |p| load_action(p).map(GallerySpace::Finite),
    )?;
    Ok(match s {
        GallerySpace::Finite(s) => {
            check_order("--space", s.group().order(), max_order)?;
            Space::Finite(s)
        }
        GallerySpace::Windowed(w) => Space::Windowed(w),
    })
}

pub fn finite_space(name: &str, max_order: usize) -> CliResult<BinaryGSpace> {
    match space(name, max_order)? {
        Space::Finite(s) => Ok(s),
        Space::Windowed(_) => Err(CliError::input(format!(
            "`{name}` is a windowed integer space; this command needs a finite space"
        ))
        .for_flag("--space")),
    }
}

pub fn point(space: &BinaryGSpace, name: &str, flag: &str) -> CliResult<usize> {
    space.point_by_name(name).ok_or_else(|| {
        CliError::input(format!(
            "no point `{name}` (labels or indices 0..{})",
            space.carrier_size()
        ))
        .for_flag(flag)
    })
}

pub fn integer_point(space: &WindowedIntSpace, name: &str, flag: &str) -> CliResult<i64> {
    let x: i64 = name
        .trim()
        .parse()
        .map_err(|_| CliError::input(format!("`{name}` is not an integer")).for_flag(flag))?;
    if !space.contains(x) {
        return Err(CliError::input(format!(
            "{x} lies outside the window [-{w}, {w}]",
            w = space.window()
        ))
        .for_flag(flag));
    }
    Ok(x)
}

pub fn labels(space: &BinaryGSpace, set: &PointSet) -> Vec<String> {
    set.iter().map(|p| space.label(p)).collect()
}

pub fn describe_space(name: &str, space: &BinaryGSpace) -> Value {
    json!({
        "name": name,
        "group_order": space.group().order(),
        "carrier": space.carrier_size(),
    })
}

pub fn describe_windowed(name: &str, w: &WindowedIntSpace) -> Value {
    json!({
        "name": name,
        "window": w.window(),
        "carrier": w.carrier_size(),
        "rule": "n(x, y) = n x + y",
        "group_range": [-2 * w.window(), 2 * w.window()],
    })
}
