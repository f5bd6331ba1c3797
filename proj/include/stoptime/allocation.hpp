#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "stoptime/bitstring.hpp"
#include "stoptime/description_mode.hpp"
#include "stoptime/random.hpp"

namespace stoptime {

using ObjectId = std::uint64_t;

// Upper bounds for a function of two arguments.

/// "K(object, y) <= bound for every extension y of vertex".
struct PairAnnouncement {
  ObjectId object;
  BitString vertex;
  std::size_t bound;
};
using PairSchedule = std::vector<PairAnnouncement>;

/// Smallest bound announced for `object` at a prefix of `y`; nullopt if none.
Complexity evaluate(const PairSchedule& schedule, ObjectId object, const BitString& y);

/// At every vertex y and for every n, at most 2^n objects x have K(x, y) < n.
bool pair_schedule_in_class(const PairSchedule& schedule);

/// Announcements of the m-th input shifted by m + 1, interleaved in time
/// order, so that the result evaluates to min_m (K_m + m + 1) everywhere.
PairSchedule minimal_in_class(const std::vector<PairSchedule>& schedules);

// The layered description allocator.

/// "object is declared simple at vertex" (and at all its extensions).
struct Declaration {
  ObjectId object;
  BitString vertex;
};
using DeclarationStream = std::vector<Declaration>;

struct Service {
  ObjectId object;
  BitString vertex;
  std::size_t description;
};

/// One layer: a pool of `pool` description ids and the requests it served.
class LayerState {
 public:
  explicit LayerState(std::size_t pool);

  /// For tests: a state with arbitrary services, legal or not.
  static LayerState from_services(std::size_t pool, const std::vector<Service>& services);

  std::size_t pool() const { return pool_; }
  const std::vector<Service>& services() const { return services_; }

  /// Services at vertices comparable with `v`: those valid somewhere in the v-subtree.
  std::vector<const Service*> served_in(const BitString& v) const;

  /// A service of `object` at a prefix of `v`, if any.
  const Service* covering(ObjectId object, const BitString& v) const;

  /// Serves `object` at `v` if acceptable: anchors at the highest acceptable
  /// ancestor and reuses the object's description there, else takes the lowest
  /// unused id. Returns the description and the anchor, or nothing on rejection.
  std::optional<std::pair<std::size_t, BitString>> serve(ObjectId object, const BitString& v);

 private:
  void add(const Service& s);

  std::size_t pool_;
  std::vector<Service> services_;
  std::map<BitString, std::vector<std::size_t>> by_vertex_;
};

/// Fewer than N objects served in the v-subtree, or exactly N with `object` among them.
bool is_acceptable(const LayerState& layer, ObjectId object, const BitString& v);

/// Along every path objects and descriptions correspond one to one, and the
/// same holds in every subtree serving at most N objects.
bool verify_layer(const LayerState& layer);

struct AllocatorConfig {
  std::size_t k = 0;       // n = 2^k objects per path
  std::size_t depth = 16;
  std::size_t pool = 0;    // 0 means 3n
  std::size_t layers = 0;  // 0 means n + 2

  std::size_t n() const { return std::size_t{1} << k; }
  std::size_t pool_size() const { return pool != 0 ? pool : 3 * n(); }
  std::size_t layer_count() const { return layers != 0 ? layers : n() + 2; }
};

enum class RequestKind { Served, Covered, Rejected };

struct RequestOutcome {
  RequestKind kind = RequestKind::Rejected;
  std::size_t layer = 0;
  std::size_t description = 0;
  BitString anchor;                 // where the description was chosen
  std::vector<std::size_t> passed;  // layers that rejected it first
};

struct Rejection {
  std::size_t sequence;  // index of the request in the stream
  std::size_t layer;
  ObjectId object;
  BitString vertex;
};

class LayeredAllocator {
 public:
  explicit LayeredAllocator(AllocatorConfig config);

  /// Offers the request to the layers in order. A request for an object
  /// already served at a prefix of `v` is Covered and changes nothing.
  RequestOutcome request(ObjectId object, const BitString& v);

  const AllocatorConfig& config() const { return config_; }
  const std::vector<LayerState>& layers() const { return layers_; }
  const std::vector<Rejection>& rejections() const { return rejections_; }

  /// A rejection at layer l > 0 was preceded by a rejection at layer l - 1 of
  /// a different object at a proper extension of the vertex.
  bool escalation_witnessed(const Rejection& r) const;

 private:
  AllocatorConfig config_;
  std::vector<LayerState> layers_;
  std::vector<Rejection> rejections_;
  std::size_t sequence_ = 0;
};

/// Width of the layer and id fields: k + 2 bits each.
std::size_t allocator_field_width(std::size_t k);

/// Framing overhead beyond 2k bits.
inline constexpr std::size_t kAllocatorFraming = 4;

struct AllocatorModeResult {
  DescriptionMode mode;
  std::vector<RequestOutcome> outcomes;
  std::size_t max_layer = 0;
};

/// Runs the allocator on `stream` and turns every service into the triple
/// (layer . id, vertex, binary(object)). Throws InvariantViolation if a request
/// is rejected by all layers.
AllocatorModeResult allocator_to_mode(const AllocatorConfig& config,
                                      const DeclarationStream& stream);

/// Objects declared at a prefix of `v`.
std::set<ObjectId> declared_at(const DeclarationStream& stream, const BitString& v);

/// Whether appending `d` keeps at most `budget` objects declared at every vertex.
bool declaration_fits(const DeclarationStream& stream, const Declaration& d, std::size_t budget);

/// A random stream of `attempts` proposals, keeping the legal ones. Vertices
/// stay within `spread` levels so that subtrees fill up.
DeclarationStream random_declarations(Rng& rng, std::size_t budget, std::size_t spread,
                                      std::size_t attempts);

}  // namespace stoptime
