#include "rfsim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "rfsim/io_util.hpp"
#include "rfsim/parallel.hpp"

namespace rfsim::prop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = scene::kRayEpsilon;

// ---------------------------------------------------------------------------
// Seeding and sampling
// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

struct Basis {
    Vec3 ex, ey, ez;
    Vec3 apply(const Vec3& v) const { return ex * v.x + ey * v.y + ez * v.z; }
};

// Uniform random rotation from a seeded quaternion (Shoemake's method).
Basis random_rotation(std::uint64_t seed) {
    std::uint64_t state = seed;
    const double u1 = unit_double(splitmix64(state));
    const double u2 = unit_double(splitmix64(state));
    const double u3 = unit_double(splitmix64(state));
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    const double qx = a * std::sin(2.0 * M_PI * u2);
    const double qy = a * std::cos(2.0 * M_PI * u2);
    const double qz = b * std::sin(2.0 * M_PI * u3);
    const double qw = b * std::cos(2.0 * M_PI * u3);

    Basis r;
    r.ex = {1 - 2 * (qy * qy + qz * qz), 2 * (qx * qy + qz * qw), 2 * (qx * qz - qy * qw)};
    r.ey = {2 * (qx * qy - qz * qw), 1 - 2 * (qx * qx + qz * qz), 2 * (qy * qz + qx * qw)};
    r.ez = {2 * (qx * qz + qy * qw), 2 * (qy * qz - qx * qw), 1 - 2 * (qx * qx + qy * qy)};
    return r;
}

// Spherical Fibonacci lattice, cached per sample count. Per-link variation
// comes from a seeded rotation applied on the fly.
const std::vector<Vec3>& fibonacci_sphere(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<std::vector<Vec3>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        auto dirs = std::make_unique<std::vector<Vec3>>();
        dirs->reserve(static_cast<size_t>(n));
        const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < n; ++i) {
            const double z = 1.0 - (2.0 * i + 1.0) / n;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = golden_angle * i;
            dirs->push_back({r * std::cos(phi), r * std::sin(phi), z});
        }
        slot = std::move(dirs);
    }
    return *slot;
}

std::uint64_t fnv1a(std::uint64_t hash, const void* data, size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

// ---------------------------------------------------------------------------
// Geometry helpers
// ---------------------------------------------------------------------------

Vec3 mirror_point(const Vec3& p, const scene::Face& f) {
    return p - f.normal * (2.0 * (dot(f.normal, p) - f.plane_offset));
}

double side(const scene::Face& f, const Vec3& p) { return dot(f.normal, p) - f.plane_offset; }

// True when the open segment a->b is unobstructed.
bool segment_clear(const scene::Scene& sc, const Vec3& a, const Vec3& b) {
    const Vec3 d = b - a;
    const double len = d.norm();
    if (len <= 2.0 * kEps) return true;
    return !sc.first_hit(a, d / len, len - kEps).has_value();
}

double polyline_length(const std::vector<Vec3>& pts) {
    double len = 0.0;
    for (size_t i = 1; i < pts.size(); ++i) len += (pts[i] - pts[i - 1]).norm();
    return len;
}

// Deterministic bounded keep-strongest collector. Order of equal gains
// follows generation order.
class TopPaths {
public:
    explicit TopPaths(int capacity) : capacity_(static_cast<size_t>(capacity)) {}

    void add(PathRecord&& record) {
        entries_.push_back({record.path_gain_db, next_index_++, std::move(record)});
        std::push_heap(entries_.begin(), entries_.end(), weaker_first);
        if (entries_.size() > capacity_) {
            std::pop_heap(entries_.begin(), entries_.end(), weaker_first);
            entries_.pop_back();
        }
    }

    std::vector<PathRecord> take() {
        std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
            if (a.gain != b.gain) return a.gain > b.gain;
            return a.index < b.index;
        });
        std::vector<PathRecord> out;
        out.reserve(entries_.size());
        for (auto& e : entries_) out.push_back(std::move(e.record));
        return out;
    }

private:
    struct Entry {
        double gain;
        std::uint64_t index;
        PathRecord record;
    };
    // Heap root = weakest entry (lowest gain; newest first among equals).
    static bool weaker_first(const Entry& a, const Entry& b) {
        if (a.gain != b.gain) return a.gain > b.gain;
        return a.index < b.index;
    }

    size_t capacity_;
    std::uint64_t next_index_ = 0;
    std::vector<Entry> entries_;
};

struct FaceSeqHash {
    size_t operator()(const std::vector<int>& v) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (int x : v) h = fnv1a(h, &x, sizeof(x));
        return static_cast<size_t>(h);
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Link budget primitives
// ---------------------------------------------------------------------------

std::string path_kind_name(PathKind k) {
    switch (k) {
        case PathKind::kLos: return "LOS";
        case PathKind::kSpecular: return "SPECULAR";
        case PathKind::kDiffuse: return "DIFFUSE";
        case PathKind::kTransmitted: return "TRANSMITTED";
        case PathKind::kMixed: return "MIXED";
    }
    return "LOS";
}

double fspl_db(double distance_m, double frequency_hz) {
    return 20.0 * std::log10(4.0 * M_PI * distance_m * frequency_hz / kSpeedOfLight);
}

double reflection_power(const Material& m, double frequency_hz, double cos_incidence) {
    const double cos_i = std::clamp(cos_incidence, 0.0, 1.0);
    const double sin2_i = 1.0 - cos_i * cos_i;
    const std::complex<double> eps_c(
        m.relative_permittivity(),
        -m.conductivity_at(frequency_hz) / (2.0 * M_PI * frequency_hz * kVacuumPermittivity));
    const std::complex<double> s = std::sqrt(eps_c - sin2_i);
    const std::complex<double> gamma_te = (cos_i - s) / (cos_i + s);
    const std::complex<double> gamma_tm = (eps_c * cos_i - s) / (eps_c * cos_i + s);
    const double r = 0.5 * (std::norm(gamma_te) + std::norm(gamma_tm));
    return std::clamp(r, 0.0, 1.0);
}

double transmission_loss_db(const Material& m, const SolverConfig& cfg) {
    const double t = std::max(1e-30, 1.0 - reflection_power(m, cfg.frequency_hz, 1.0));
    return -10.0 * std::log10(t) + cfg.transmission_extra_loss_db;
}

double path_gain_db(double total_length_m, std::span<const Interaction> interactions,
                    const SolverConfig& cfg, const Material& m) {
    if (!(total_length_m > 0.0)) {
        throw std::invalid_argument("path_gain_db: total length must be positive");
    }
    double gain = -fspl_db(total_length_m, cfg.frequency_hz);
    const double s2 = cfg.scattering_coefficient * cfg.scattering_coefficient;
    for (const Interaction& it : interactions) {
        switch (it.kind) {
            case Interaction::Kind::kSpecular: {
                double r = reflection_power(m, cfg.frequency_hz, it.cos_incidence);
                // Energy split with the diffuse lobe: |Gamma_spec|^2 + S^2 <= 1.
                if (cfg.diffuse_reflection) r *= 1.0 - s2;
                gain += 10.0 * std::log10(std::max(r, 1e-30));
                break;
            }
            case Interaction::Kind::kTransmission:
                gain -= transmission_loss_db(m, cfg);
                break;
        }
    }
    return gain;
}

std::uint64_t link_seed(std::uint64_t root_seed, const std::string& station_id,
                        const std::string& ue_id) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a(h, &root_seed, sizeof(root_seed));
    h = fnv1a(h, "\x1f", 1);
    h = fnv1a(h, station_id.data(), station_id.size());
    h = fnv1a(h, "\x1f", 1);
    h = fnv1a(h, ue_id.data(), ue_id.size());
    return h;
}

// ---------------------------------------------------------------------------
// Path enumeration
// ---------------------------------------------------------------------------

namespace {

struct PathBuilder {
    const scene::Scene& sc;
    const SolverConfig& cfg;
    TopPaths& out;

    void emit(PathKind kind, std::vector<Vec3> vertices, std::span<const Interaction> interactions) {
        PathRecord rec;
        rec.kind = kind;
        rec.total_length = polyline_length(vertices);
        rec.departure_dir = (vertices[1] - vertices[0]).normalized();
        rec.arrival_dir = (vertices[vertices.size() - 2] - vertices.back()).normalized();
        rec.path_gain_db = path_gain_db(rec.total_length, interactions, cfg, sc.material());
        rec.vertices = std::move(vertices);
        out.add(std::move(rec));
    }

    void emit_diffuse(const Vec3& tx, const Vec3& p, const Vec3& rx, double gain_db) {
        PathRecord rec;
        rec.kind = PathKind::kDiffuse;
        rec.vertices = {tx, p, rx};
        rec.total_length = polyline_length(rec.vertices);
        rec.departure_dir = (p - tx).normalized();
        rec.arrival_dir = (p - rx).normalized();
        rec.path_gain_db = gain_db;
        out.add(std::move(rec));
    }
};

// Exact image-method reflection across the given ordered face sequence.
// Returns false when the path is geometrically or physically invalid.
bool try_image_path(const scene::Scene& sc, const Vec3& tx, const Vec3& rx,
                    const std::vector<int>& face_seq, PathBuilder& builder) {
    const auto& faces = sc.faces();
    const size_t k = face_seq.size();

    std::vector<Vec3> images(k + 1);
    images[0] = tx;
    for (size_t j = 0; j < k; ++j) images[j + 1] = mirror_point(images[j], faces[face_seq[j]]);

    // Backtrack reflection points from the receiver.
    std::vector<Vec3> points(k);
    Vec3 target = rx;
    for (size_t j = k; j-- > 0;) {
        const scene::Face& f = faces[face_seq[j]];
        const Vec3& img = images[j + 1];
        const double denom = dot(f.normal, target - img);
        if (std::fabs(denom) < 1e-12) return false;
        const double t = (f.plane_offset - dot(f.normal, img)) / denom;
        if (!(t > 0.0 && t < 1.0)) return false;
        const Vec3 p = img + (target - img) * t;
        if (!sc.face_contains(face_seq[j], p)) return false;
        points[j] = p;
        target = p;
    }

    // Physical side checks and visibility along the unfolded chain.
    std::vector<Interaction> interactions(k);
    Vec3 prev = tx;
    for (size_t j = 0; j < k; ++j) {
        const scene::Face& f = faces[face_seq[j]];
        const Vec3& p = points[j];
        const Vec3& next = (j + 1 < k) ? points[j + 1] : rx;
        const Vec3 to_prev = prev - p;
        const Vec3 to_next = next - p;
        const double lp = to_prev.norm(), ln = to_next.norm();
        if (lp <= kEps || ln <= kEps) return false;
        const double cos_in = dot(f.normal, to_prev) / lp;
        const double cos_out = dot(f.normal, to_next) / ln;
        if (cos_in <= 1e-9 || cos_out <= 1e-9) return false;
        interactions[j] = {Interaction::Kind::kSpecular, cos_in};
        prev = p;
    }

    prev = tx;
    for (size_t j = 0; j <= k; ++j) {
        const Vec3 a = (j == 0) ? tx : points[j - 1] + faces[face_seq[j - 1]].normal * kEps;
        const Vec3 b = (j == k) ? rx : points[j] + faces[face_seq[j]].normal * kEps;
        if (!segment_clear(sc, a, b)) return false;
    }

    std::vector<Vec3> vertices;
    vertices.reserve(k + 2);
    vertices.push_back(tx);
    for (const auto& p : points) vertices.push_back(p);
    vertices.push_back(rx);
    builder.emit(PathKind::kSpecular, std::move(vertices), interactions);
    return true;
}

void exact_specular_paths(const scene::Scene& sc, const Vec3& tx, const Vec3& rx,
                          const SolverConfig& cfg, PathBuilder& builder) {
    const auto& faces = sc.faces();
    const int n_faces = static_cast<int>(faces.size());
    std::vector<int> seq;

    // Depth 1.
    for (int f = 0; f < n_faces; ++f) {
        if (side(faces[f], tx) <= kEps || side(faces[f], rx) <= kEps) continue;
        seq.assign({f});
        try_image_path(sc, tx, rx, seq, builder);
    }
    if (cfg.max_depth < 2) return;

    // Depth 2: ordered face pairs. The backtracking in try_image_path prunes
    // invalid pairs cheaply before any ray casting.
    for (int f = 0; f < n_faces; ++f) {
        if (side(faces[f], tx) <= kEps) continue;
        for (int g = 0; g < n_faces; ++g) {
            if (g == f || side(faces[g], rx) <= kEps) continue;
            seq.assign({f, g});
            try_image_path(sc, tx, rx, seq, builder);
        }
    }
}

}  // namespace

std::vector<PathRecord> solve_paths(const scene::Scene& sc, const Vec3& tx, const Vec3& rx,
                                    const SolverConfig& cfg, std::uint64_t seed) {
    if ((rx - tx).norm2() == 0.0) throw std::invalid_argument("solve_paths: tx equals rx");
    if (cfg.max_num_paths_per_src <= 0 || cfg.samples_per_src <= 0) {
        throw std::invalid_argument("solve_paths: sample and path budgets must be positive");
    }

    TopPaths top(cfg.max_num_paths_per_src);
    PathBuilder builder{sc, cfg, top};

    const bool los_visible = sc.is_los(tx, rx);
    if (los_visible) {
        builder.emit(PathKind::kLos, {tx, rx}, {});
    }

    if (cfg.specular_reflection && cfg.max_depth >= 1) {
        exact_specular_paths(sc, tx, rx, cfg, builder);
    }

    const bool shoot_for_specular = cfg.specular_reflection && cfg.max_depth >= 3;
    const bool shoot_for_diffuse = cfg.diffuse_reflection && cfg.max_depth >= 1;
    if (shoot_for_specular || shoot_for_diffuse) {
        const auto& base_dirs = fibonacci_sphere(cfg.samples_per_src);
        const Basis rot = random_rotation(seed);
        const double wavelength = kSpeedOfLight / cfg.frequency_hz;
        const double s2 = cfg.scattering_coefficient * cfg.scattering_coefficient;
        const double diffuse_const =
            s2 * wavelength * wavelength / (4.0 * M_PI * M_PI * cfg.samples_per_src);

        std::unordered_set<std::vector<int>, FaceSeqHash> seen_sequences;
        std::vector<int> face_seq;

        for (const Vec3& base : base_dirs) {
            Vec3 dir = rot.apply(base);
            Vec3 origin = tx;
            face_seq.clear();
            const int bounces = shoot_for_specular ? cfg.max_depth : 1;
            for (int depth = 1; depth <= bounces; ++depth) {
                const auto hit = sc.first_hit(origin, dir, kInf);
                if (!hit) break;
                const Vec3 n = hit->normal;
                const double toward = dot(dir, n);
                const Vec3 n_eff = (toward < 0.0) ? n : -n;

                if (depth == 1 && shoot_for_diffuse) {
                    const double cos_i = -dot(dir, n_eff);
                    const Vec3 to_rx = rx - hit->point;
                    const double d2 = to_rx.norm();
                    if (cos_i > 0.0 && d2 > kEps) {
                        const double cos_s = dot(n_eff, to_rx) / d2;
                        if (cos_s > 0.0 &&
                            segment_clear(sc, hit->point + n_eff * kEps, rx)) {
                            const double d1 = hit->t;
                            double g = diffuse_const * cos_s / (d2 * d2);
                            // Point-tile approximation can exceed the free-
                            // space budget at grazing-close receivers; clamp.
                            const double bound =
                                std::pow(wavelength / (4.0 * M_PI * (d1 + d2)), 2.0);
                            g = std::min(g, bound);
                            if (g > 0.0) {
                                builder.emit_diffuse(tx, hit->point, rx,
                                                     10.0 * std::log10(g));
                            }
                        }
                    }
                }

                if (!shoot_for_specular) break;
                face_seq.push_back(hit->face);
                if (depth >= 3 && seen_sequences.insert(face_seq).second) {
                    try_image_path(sc, tx, rx, face_seq, builder);
                }
                dir = dir - n * (2.0 * toward);
                origin = hit->point + n_eff * kEps;
            }
        }
    }

    if (cfg.refraction && !los_visible) {
        // Through-wall continuation of the blocked direct segment.
        const Vec3 d = rx - tx;
        const double len = d.norm();
        const Vec3 dir = d / len;
        std::vector<Vec3> vertices{tx};
        Vec3 origin = tx;
        double traveled = 0.0;
        int crossings = 0;
        while (true) {
            const auto hit = sc.first_hit(origin, dir, len - traveled - kEps);
            if (!hit) break;
            ++crossings;
            vertices.push_back(hit->point);
            traveled += hit->t + kEps;
            origin = hit->point + dir * kEps;
            if (traveled >= len) break;
        }
        if (crossings > 0) {
            vertices.push_back(rx);
            std::vector<Interaction> interactions(
                static_cast<size_t>(crossings),
                Interaction{Interaction::Kind::kTransmission, 1.0});
            builder.emit(PathKind::kTransmitted, std::move(vertices), interactions);
        }
    }

    return top.take();
}

// ---------------------------------------------------------------------------
// Matrix assembly
// ---------------------------------------------------------------------------

double combine_rssi_dbm(std::span<const PathRecord> paths, double tx_power_dbm,
                        const antenna::AntennaConfig& tx_antenna,
                        const antenna::AntennaConfig& rx_antenna) {
    double linear_mw = 0.0;
    for (const PathRecord& p : paths) {
        const double g_tx = antenna::gain_dbi(tx_antenna, p.departure_dir);
        const double g_rx = antenna::gain_dbi(rx_antenna, p.arrival_dir);
        linear_mw += std::pow(10.0, (tx_power_dbm + g_tx + g_rx + p.path_gain_db) / 10.0);
    }
    return 10.0 * std::log10(linear_mw);
}

RssiMatrix simulate_rssi(const scene::Scene& sc, const std::vector<StationConfig>& stations,
                         const std::vector<UeConfig>& ues, const SolverConfig& cfg,
                         std::uint64_t seed, int workers) {
    if (stations.empty() || ues.empty()) {
        throw std::invalid_argument("simulate_rssi: station and UE lists must be non-empty");
    }

    std::vector<std::string> station_ids, ue_ids;
    station_ids.reserve(stations.size());
    for (const auto& s : stations) {
        if (s.altitude_m <= 0.0) {
            throw std::invalid_argument("station '" + s.id + "': altitude must be positive");
        }
        station_ids.push_back(s.id);
    }
    ue_ids.reserve(ues.size());
    for (const auto& u : ues) ue_ids.push_back(u.id);

    RssiMatrix matrix(std::move(station_ids), std::move(ue_ids), RssiSource::kSim);

    std::vector<Vec3> tx_pos(stations.size()), rx_pos(ues.size());
    for (size_t i = 0; i < stations.size(); ++i) tx_pos[i] = station_enu(stations[i], sc.origin());
    for (size_t i = 0; i < ues.size(); ++i) rx_pos[i] = ue_enu(ues[i], sc.origin());

    const int n_links = static_cast<int>(stations.size() * ues.size());
    const int n_ues = static_cast<int>(ues.size());
    parallel_for(n_links, io::resolve_worker_count(workers), [&](int link) {
        const int s = link / n_ues;
        const int u = link % n_ues;
        const auto paths = solve_paths(sc, tx_pos[s], rx_pos[u], cfg,
                                       link_seed(seed, stations[s].id, ues[u].id));
        if (paths.empty()) {
            matrix.set_missing(s, u);
        } else {
            matrix.set(s, u, combine_rssi_dbm(paths, stations[s].tx_power_dbm,
                                              stations[s].antenna, ues[u].antenna));
        }
    });
    return matrix;
}

}  // namespace rfsim::prop
