use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::error::ClusterError;
use crate::exmat::{ExMat, ThetaTag, ThetaVec};

/// Ideal triangulation of a punctured surface, encoded combinatorially.
/// Each triangle lists its three sides in counterclockwise order; corner j
/// sits between side j (on its left, seen from the puncture) and side j+1
/// (on its right). No embedding data is stored, every quantity in scope
/// depends only on corner adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tri {
    n_arcs: usize,
    triangles: Vec<[usize; 3]>,
    corner_labels: Vec<[String; 3]>,
}

type Corner = (usize, u8);

fn side_occurrences(
    n_arcs: usize,
    triangles: &[[usize; 3]],
) -> Result<Vec<Vec<Corner>>, ClusterError> {
    let mut occ: Vec<Vec<Corner>> = vec![Vec::new(); n_arcs];
    for (t, tri) in triangles.iter().enumerate() {
        if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
            return Err(ClusterError::MalformedTriangulation(format!(
                "triangle {t} must be bounded by three distinct arcs, got {tri:?}"
            )));
        }
        for (slot, &arc) in tri.iter().enumerate() {
            if arc >= n_arcs {
                return Err(ClusterError::MalformedTriangulation(format!(
                    "triangle {t} references arc {arc}, but only {n_arcs} arcs exist"
                )));
            }
            occ[arc].push((t, slot as u8));
        }
    }
    for (arc, slots) in occ.iter().enumerate() {
        if slots.len() != 2 {
            return Err(ClusterError::MalformedTriangulation(format!(
                "arc {arc} bounds {} triangle sides, expected exactly 2",
                slots.len()
            )));
        }
    }
    Ok(occ)
}

/// Walks corners around their common vertex: from corner (t, c), cross the
/// side on its right to the matching corner of the neighbouring triangle.
fn next_corner(triangles: &[[usize; 3]], occ: &[Vec<Corner>], at: Corner) -> Corner {
    let (t, c) = at;
    let right_slot = ((c + 1) % 3) as usize;
    let arc = triangles[t][right_slot];
    let pair = &occ[arc];
    if pair[0] == (t, right_slot as u8) {
        pair[1]
    } else {
        pair[0]
    }
}

fn corner_orbits(triangles: &[[usize; 3]], occ: &[Vec<Corner>]) -> Vec<Vec<Corner>> {
    let mut seen: BTreeSet<Corner> = BTreeSet::new();
    let mut orbits = Vec::new();
    for t in 0..triangles.len() {
        for c in 0..3u8 {
            let start = (t, c);
            if seen.contains(&start) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut at = start;
            loop {
                orbit.push(at);
                seen.insert(at);
                at = next_corner(triangles, occ, at);
                if at == start {
                    break;
                }
            }
            orbits.push(orbit);
        }
    }
    orbits
}

impl Tri {
    fn from_parts(
        n_arcs: usize,
        triangles: Vec<[usize; 3]>,
        corner_labels: Vec<[String; 3]>,
    ) -> Result<Self, ClusterError> {
        let occ = side_occurrences(n_arcs, &triangles)?;
        let orbits = corner_orbits(&triangles, &occ);

        let mut labels_seen: BTreeSet<&String> = BTreeSet::new();
        for orbit in &orbits {
            let (t0, c0) = orbit[0];
            let label = &corner_labels[t0][c0 as usize];
            for &(t, c) in orbit {
                if &corner_labels[t][c as usize] != label {
                    return Err(ClusterError::MalformedTriangulation(format!(
                        "corners around one puncture carry different labels \
                         ({label:?} vs {:?})",
                        corner_labels[t][c as usize]
                    )));
                }
            }
            if !labels_seen.insert(label) {
                return Err(ClusterError::MalformedTriangulation(format!(
                    "puncture label {label:?} is shared by two distinct vertices"
                )));
            }
        }

        let v = orbits.len() as i64;
        let e = n_arcs as i64;
        let f = triangles.len() as i64;
        let doubled_genus = 2 - v + e - f;
        if doubled_genus < 0 || doubled_genus % 2 != 0 {
            return Err(ClusterError::MalformedTriangulation(format!(
                "corner gluing is inconsistent: V={v}, E={e}, F={f} give no closed \
                 orientable surface"
            )));
        }

        Ok(Tri {
            n_arcs,
            triangles,
            corner_labels,
        })
    }

    /// Builds a triangulation from oriented triangles alone, naming the
    /// punctures p0, p1, ... in order of their smallest corner.
    pub fn from_triangles(
        n_arcs: usize,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, ClusterError> {
        let occ = side_occurrences(n_arcs, &triangles)?;
        let mut orbits = corner_orbits(&triangles, &occ);
        for orbit in &mut orbits {
            orbit.sort();
        }
        orbits.sort();
        let mut corner_labels = vec![[String::new(), String::new(), String::new()];
            triangles.len()];
        for (p, orbit) in orbits.iter().enumerate() {
            for &(t, c) in orbit {
                corner_labels[t][c as usize] = format!("p{p}");
            }
        }
        Tri::from_parts(n_arcs, triangles, corner_labels)
    }

    /// Builds a triangulation with an explicit puncture incidence map from
    /// label to the corners around that puncture.
    pub fn new(
        n_arcs: usize,
        triangles: Vec<[usize; 3]>,
        punctures: &BTreeMap<String, BTreeSet<Corner>>,
    ) -> Result<Self, ClusterError> {
        let mut corner_labels = vec![[String::new(), String::new(), String::new()];
            triangles.len()];
        let mut covered = 0usize;
        for (label, corners) in punctures {
            for &(t, c) in corners {
                if t >= triangles.len() || c >= 3 {
                    return Err(ClusterError::MalformedTriangulation(format!(
                        "puncture {label:?} lists corner ({t},{c}) outside the triangle list"
                    )));
                }
                let slot = &mut corner_labels[t][c as usize];
                if !slot.is_empty() {
                    return Err(ClusterError::MalformedTriangulation(format!(
                        "corner ({t},{c}) assigned to two punctures"
                    )));
                }
                *slot = label.clone();
                covered += 1;
            }
        }
        if covered != 3 * triangles.len() {
            return Err(ClusterError::MalformedTriangulation(format!(
                "puncture map covers {covered} corners, expected {}",
                3 * triangles.len()
            )));
        }
        Tri::from_parts(n_arcs, triangles, corner_labels)
    }

    /// The standard one-vertex triangulation of the once-punctured torus:
    /// a square with identified sides, cut by a diagonal.
    pub fn once_punctured_torus() -> Self {
        Tri::from_triangles(3, vec![[0, 1, 2], [0, 1, 2]])
            .expect("the standard torus triangulation is well formed")
    }

    /// The tetrahedral triangulation of the four-punctured sphere.
    pub fn four_punctured_sphere() -> Self {
        Tri::from_triangles(6, vec![[0, 3, 1], [1, 5, 2], [2, 4, 0], [4, 5, 3]])
            .expect("the tetrahedral triangulation is well formed")
    }

    pub fn n_arcs(&self) -> usize {
        self.n_arcs
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn corner_label(&self, t: usize, c: u8) -> &str {
        &self.corner_labels[t][c as usize]
    }

    /// Incidence map from puncture label to the corners around it.
    pub fn punctures(&self) -> BTreeMap<String, BTreeSet<Corner>> {
        let mut map: BTreeMap<String, BTreeSet<Corner>> = BTreeMap::new();
        for (t, labels) in self.corner_labels.iter().enumerate() {
            for (c, label) in labels.iter().enumerate() {
                map.entry(label.clone()).or_default().insert((t, c as u8));
            }
        }
        map
    }

    pub fn puncture_labels(&self) -> Vec<String> {
        self.punctures().into_keys().collect()
    }

    /// Canonical form: each triangle rotated so its side triple is
    /// lexicographically least, then the triangle list sorted. Corner labels
    /// travel with their sides. Flip-twice returns the original up to this
    /// normalization.
    pub fn canonical(&self) -> Tri {
        let rotate = |tri: &[usize; 3], labels: &[String; 3]| {
            let r = (0..3)
                .min_by_key(|&r| [tri[r], tri[(r + 1) % 3], tri[(r + 2) % 3]])
                .expect("three rotations");
            (
                [tri[r], tri[(r + 1) % 3], tri[(r + 2) % 3]],
                [
                    labels[r].clone(),
                    labels[(r + 1) % 3].clone(),
                    labels[(r + 2) % 3].clone(),
                ],
            )
        };
        let mut items: Vec<([usize; 3], [String; 3])> = self
            .triangles
            .iter()
            .zip(&self.corner_labels)
            .map(|(tri, labels)| rotate(tri, labels))
            .collect();
        items.sort();
        let (triangles, corner_labels) = items.into_iter().unzip();
        Tri {
            n_arcs: self.n_arcs,
            triangles,
            corner_labels,
        }
    }
}

/// Exchange matrix of a triangulation: ε_ij = a_ij − a_ji, where a_ij counts
/// the corners with arc i on the right and arc j on the left.
pub fn exmat_from_tri(t: &Tri) -> ExMat {
    let n = t.n_arcs();
    let mut a = vec![vec![0i64; n]; n];
    for tri in t.triangles() {
        for c in 0..3 {
            let left = tri[c];
            let right = tri[(c + 1) % 3];
            a[right][left] += 1;
        }
    }
    let entries: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| a[i][j] - a[j][i]).collect())
        .collect();
    ExMat::new(entries).expect("corner counts produce a skew-symmetric matrix")
}

/// Flip of the arc k across its quadrilateral. The new arc inherits the
/// index k, so flip sequences compose positionally. A flip that would
/// create a triangle with two equal sides is refused.
pub fn flip_tri(t: &Tri, k: usize) -> Result<Tri, ClusterError> {
    if k >= t.n_arcs() {
        return Err(ClusterError::IndexOutOfRange {
            index: k,
            rank: t.n_arcs(),
        });
    }
    let occ = side_occurrences(t.n_arcs, &t.triangles).expect("already validated");
    let (ta, pa) = occ[k][0];
    let (tb, pb) = occ[k][1];
    debug_assert_ne!(ta, tb, "distinct sides force distinct triangles");
    let (pa, pb) = (pa as usize, pb as usize);

    let side_a = |i: usize| t.triangles[ta][(pa + i) % 3];
    let side_b = |i: usize| t.triangles[tb][(pb + i) % 3];
    let (a, b) = (side_a(1), side_a(2));
    let (c, d) = (side_b(1), side_b(2));
    if b == c || d == a {
        return Err(ClusterError::SelfFoldedFlip { arc: k });
    }

    let lab_a = |i: usize| t.corner_labels[ta][(pa + i) % 3].clone();
    let lab_b = |i: usize| t.corner_labels[tb][(pb + i) % 3].clone();
    // Quadrilateral vertices: the flipped diagonal joins z and w.
    let y = lab_a(0);
    let z = lab_a(1);
    let x = lab_a(2);
    let w = lab_b(1);

    let mut triangles = t.triangles.clone();
    let mut corner_labels = t.corner_labels.clone();
    triangles[ta] = [k, b, c];
    corner_labels[ta] = [z.clone(), x, w.clone()];
    triangles[tb] = [k, d, a];
    corner_labels[tb] = [w, y, z];

    Tri::from_parts(t.n_arcs, triangles, corner_labels)
}

/// One constraint vector per puncture: θ_{p,i} is the valence of arc i at p,
/// the number of its endpoints lying on that puncture (0, 1, or 2).
pub fn theta_from_punctures(t: &Tri) -> Vec<ThetaVec> {
    let occ = side_occurrences(t.n_arcs, &t.triangles).expect("already validated");
    let mut per_label: BTreeMap<String, Vec<i64>> = BTreeMap::new();
    for label in t.puncture_labels() {
        per_label.insert(label, vec![0i64; t.n_arcs]);
    }
    for (arc, slots) in occ.iter().enumerate() {
        let (t0, p0) = slots[0];
        // The side at slot p runs from corner p+2 to corner p; both ends
        // counted once, read off a single occurrence.
        let start = t.corner_label(t0, (p0 + 2) % 3).to_string();
        let end = t.corner_label(t0, p0).to_string();
        per_label.get_mut(&start).expect("label exists")[arc] += 1;
        per_label.get_mut(&end).expect("label exists")[arc] += 1;
    }
    per_label
        .into_iter()
        .map(|(label, coefficients)| ThetaVec {
            coefficients,
            tag: ThetaTag::Puncture(label),
        })
        .collect()
}

impl Serialize for Tri {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let arcs: Vec<usize> = (0..self.n_arcs).collect();
        let punctures: BTreeMap<String, Vec<[usize; 2]>> = self
            .punctures()
            .into_iter()
            .map(|(label, corners)| {
                (
                    label,
                    corners
                        .into_iter()
                        .map(|(t, c)| [t, c as usize])
                        .collect(),
                )
            })
            .collect();
        let mut st = s.serialize_struct("Tri", 3)?;
        st.serialize_field("arcs", &arcs)?;
        st.serialize_field("triangles", &self.triangles)?;
        st.serialize_field("punctures", &punctures)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct TriRepr {
    arcs: Vec<usize>,
    triangles: Vec<[usize; 3]>,
    #[serde(default)]
    punctures: Option<BTreeMap<String, Vec<[usize; 2]>>>,
}

impl<'de> Deserialize<'de> for Tri {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = TriRepr::deserialize(d)?;
        let n = r.arcs.len();
        let expected: Vec<usize> = (0..n).collect();
        if r.arcs != expected {
            return Err(serde::de::Error::custom(
                "arcs must be listed as 0..n in order",
            ));
        }
        match r.punctures {
            Some(map) => {
                let punctures: BTreeMap<String, BTreeSet<Corner>> = map
                    .into_iter()
                    .map(|(label, corners)| {
                        (
                            label,
                            corners.into_iter().map(|[t, c]| (t, c as u8)).collect(),
                        )
                    })
                    .collect();
                Tri::new(n, r.triangles, &punctures).map_err(serde::de::Error::custom)
            }
            None => Tri::from_triangles(n, r.triangles).map_err(serde::de::Error::custom),
        }
    }
}
