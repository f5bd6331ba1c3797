#include "stoptime/allocation.hpp"

#include <algorithm>

#include "stoptime/config.hpp"
#include "stoptime/errors.hpp"

namespace stoptime {

Complexity evaluate(const PairSchedule& schedule, ObjectId object, const BitString& y) {
  Complexity best;
  for (const auto& a : schedule) {
    if (a.object == object && is_prefix(a.vertex, y) && (!best || a.bound < *best)) best = a.bound;
  }
  return best;
}

bool pair_schedule_in_class(const PairSchedule& schedule) {
  // Counts only grow downwards, so announced vertices are the worst case.
  for (const auto& at : schedule) {
    std::map<ObjectId, std::size_t> bound;
    for (const auto& a : schedule) {
      if (!is_prefix(a.vertex, at.vertex)) continue;
      auto [it, fresh] = bound.emplace(a.object, a.bound);
      if (!fresh) it->second = std::min(it->second, a.bound);
    }
    std::vector<std::size_t> values;
    for (const auto& [x, b] : bound) values.push_back(b);
    std::sort(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size(); ++i) {
      // #{x : K(x, y) < b + 1} = i + 1 at the last occurrence of b.
      if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
      const std::size_t n = values[i] + 1;
      if (n < 63 && i + 1 > (std::size_t{1} << n)) return false;
    }
  }
  return true;
}

PairSchedule minimal_in_class(const std::vector<PairSchedule>& schedules) {
  PairSchedule out;
  std::size_t longest = 0;
  for (const auto& s : schedules) longest = std::max(longest, s.size());
  for (std::size_t t = 0; t < longest; ++t) {
    for (std::size_t m = 0; m < schedules.size(); ++m) {
      if (t >= schedules[m].size()) continue;
      PairAnnouncement a = schedules[m][t];
      a.bound += m + 1;
      out.push_back(std::move(a));
    }
  }
  return out;
}

LayerState::LayerState(std::size_t pool) : pool_(pool) {
  if (pool == 0) throw ConfigError("layer pool must be positive");
}

LayerState LayerState::from_services(std::size_t pool, const std::vector<Service>& services) {
  LayerState layer(pool);
  for (const auto& s : services) layer.add(s);
  return layer;
}

void LayerState::add(const Service& s) {
  by_vertex_[s.vertex].push_back(services_.size());
  services_.push_back(s);
}

std::vector<const Service*> LayerState::served_in(const BitString& v) const {
  std::vector<const Service*> out;
  for (const auto& p : path_to_root(v)) {
    auto it = by_vertex_.find(p);
    if (it == by_vertex_.end()) continue;
    for (std::size_t i : it->second) out.push_back(&services_[i]);
  }
  for (auto it = by_vertex_.upper_bound(v); it != by_vertex_.end() && is_prefix(v, it->first); ++it) {
    for (std::size_t i : it->second) out.push_back(&services_[i]);
  }
  return out;
}

const Service* LayerState::covering(ObjectId object, const BitString& v) const {
  for (const auto& p : path_to_root(v)) {
    auto it = by_vertex_.find(p);
    if (it == by_vertex_.end()) continue;
    for (std::size_t i : it->second) {
      if (services_[i].object == object) return &services_[i];
    }
  }
  return nullptr;
}

bool is_acceptable(const LayerState& layer, ObjectId object, const BitString& v) {
  std::set<ObjectId> objects;
  for (const Service* s : layer.served_in(v)) objects.insert(s->object);
  if (objects.size() < layer.pool()) return true;
  return objects.size() == layer.pool() && objects.count(object) != 0;
}

std::optional<std::pair<std::size_t, BitString>> LayerState::serve(ObjectId object,
                                                                   const BitString& v) {
  if (!is_acceptable(*this, object, v)) return std::nullopt;
  // Acceptability is inherited downwards, so the first hit from the root is the highest.
  BitString anchor = v;
  for (std::size_t len = 0; len < v.size(); ++len) {
    if (is_acceptable(*this, object, v.prefix(len))) {
      anchor = v.prefix(len);
      break;
    }
  }
  std::optional<std::size_t> description;
  std::set<std::size_t> used;
  for (const Service* s : served_in(anchor)) {
    if (s->object == object) description = s->description;
    used.insert(s->description);
  }
  if (!description) {
    std::size_t id = 0;
    while (used.count(id) != 0) ++id;
    if (id >= pool_) throw InvariantViolation("regular subtree has no unused description");
    description = id;
  }
  add({object, v, *description});
  return std::make_pair(*description, anchor);
}

bool verify_layer(const LayerState& layer) {
  const auto& services = layer.services();
  for (const auto& s : services) {
    if (s.description >= layer.pool()) return false;
    for (const Service* t : layer.served_in(s.vertex)) {
      if (!are_compatible(s.vertex, t->vertex)) continue;
      if ((s.object == t->object) != (s.description == t->description)) return false;
    }
  }
  StringSet closure;
  for (const auto& s : services) {
    for (auto& p : path_to_root(s.vertex)) closure.insert(std::move(p));
  }
  for (const auto& w : closure) {
    std::map<ObjectId, std::size_t> description_of;
    std::map<std::size_t, ObjectId> object_of;
    bool bijective = true;
    for (const Service* s : layer.served_in(w)) {
      auto [a, fresh_a] = description_of.emplace(s->object, s->description);
      auto [b, fresh_b] = object_of.emplace(s->description, s->object);
      if (a->second != s->description || b->second != s->object) bijective = false;
    }
    if (description_of.size() <= layer.pool() && !bijective) return false;
  }
  return true;
}

LayeredAllocator::LayeredAllocator(AllocatorConfig config) : config_(config) {
  check_depth_bound(config.depth);
  if (config.k > 8) throw ConfigError("k above 8 is out of range");
  for (std::size_t l = 0; l < config.layer_count(); ++l) layers_.emplace_back(config.pool_size());
}

RequestOutcome LayeredAllocator::request(ObjectId object, const BitString& v) {
  check_vertex(v, config_.depth);
  const std::size_t seq = sequence_++;
  RequestOutcome out;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    if (const Service* s = layers_[l].covering(object, v)) {
      out.kind = RequestKind::Covered;
      out.layer = l;
      out.description = s->description;
      out.anchor = s->vertex;
      return out;
    }
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    if (auto served = layers_[l].serve(object, v)) {
      out.kind = RequestKind::Served;
      out.layer = l;
      out.description = served->first;
      out.anchor = served->second;
      return out;
    }
    rejections_.push_back({seq, l, object, v});
    out.passed.push_back(l);
  }
  out.kind = RequestKind::Rejected;
  return out;
}

bool LayeredAllocator::escalation_witnessed(const Rejection& r) const {
  if (r.layer == 0) return true;
  return std::any_of(rejections_.begin(), rejections_.end(), [&](const Rejection& q) {
    return q.sequence < r.sequence && q.layer + 1 == r.layer && q.object != r.object &&
           is_proper_prefix(r.vertex, q.vertex);
  });
}

std::size_t allocator_field_width(std::size_t k) { return k + 2; }

AllocatorModeResult allocator_to_mode(const AllocatorConfig& config,
                                      const DeclarationStream& stream) {
  LayeredAllocator alloc(config);
  const std::size_t width = allocator_field_width(config.k);
  if (config.layer_count() > (std::size_t{1} << width) ||
      config.pool_size() > (std::size_t{1} << width)) {
    throw ConfigError("layer count or pool size does not fit the description fields");
  }
  AllocatorModeResult result;
  std::vector<Triple> triples;
  for (const auto& d : stream) {
    RequestOutcome o = alloc.request(d.object, d.vertex);
    if (o.kind == RequestKind::Rejected) {
      throw InvariantViolation("request for object " + std::to_string(d.object) + " at \"" +
                               d.vertex.str() + "\" rejected by every layer");
    }
    result.max_layer = std::max(result.max_layer, o.layer);
    if (o.kind == RequestKind::Served) {
      triples.push_back({BitString::from_uint(o.layer, width) +
                             BitString::from_uint(o.description, width),
                         d.vertex, BitString::binary(d.object)});
    }
    result.outcomes.push_back(std::move(o));
  }
  result.mode = DescriptionMode(std::move(triples), config.depth);
  return result;
}

std::set<ObjectId> declared_at(const DeclarationStream& stream, const BitString& v) {
  std::set<ObjectId> out;
  for (const auto& d : stream) {
    if (is_prefix(d.vertex, v)) out.insert(d.object);
  }
  return out;
}

bool declaration_fits(const DeclarationStream& stream, const Declaration& d, std::size_t budget) {
  auto fits_at = [&](const BitString& w) {
    auto objects = declared_at(stream, w);
    objects.insert(d.object);
    return objects.size() <= budget;
  };
  if (!fits_at(d.vertex)) return false;
  return std::all_of(stream.begin(), stream.end(), [&](const Declaration& e) {
    return !is_prefix(d.vertex, e.vertex) || fits_at(e.vertex);
  });
}

DeclarationStream random_declarations(Rng& rng, std::size_t budget, std::size_t spread,
                                      std::size_t attempts) {
  DeclarationStream out;
  ObjectId next = 0;
  for (std::size_t i = 0; i < attempts; ++i) {
    // Deep vertices fill subtrees; shallow ones then force escalation.
    const std::size_t len = coin(rng, 0.5) ? spread : uniform(rng, 0, spread);
    Declaration d{next, BitString::from_uint(uniform(rng, 0, ~std::uint64_t{0}), len)};
    if (!out.empty() && coin(rng, 0.5)) d.object = out[uniform(rng, 0, out.size() - 1)].object;
    if (!declaration_fits(out, d, budget)) continue;
    if (d.object == next) ++next;
    out.push_back(std::move(d));
  }
  // Legality only depends on the final set, so any order is legal too.
  if (coin(rng, 0.5)) {
    std::stable_sort(out.begin(), out.end(), [](const Declaration& a, const Declaration& b) {
      return a.vertex.size() > b.vertex.size();
    });
  }
  return out;
}

}  // namespace stoptime
