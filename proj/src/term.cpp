#include "kbound/term.hpp"

#include <array>
#include <atomic>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace kbound {

namespace {

// Append-only storage whose published entries can be read without locking.
template <class T>
class ChunkedStore {
 public:
  static constexpr unsigned kChunkBits = 12;
  static constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
  static constexpr std::size_t kMaxChunks = std::size_t{1} << 16;

  const T& operator[](std::uint32_t i) const {
    return chunks_[i >> kChunkBits].load(std::memory_order_acquire)[i & (kChunkSize - 1)];
  }

  // Caller holds the writer lock.
  std::uint32_t push(T value) {
    std::size_t i = size_;
    std::size_t c = i >> kChunkBits;
    if (c >= kMaxChunks) throw std::length_error("term pool exhausted");
    T* chunk = chunks_[c].load(std::memory_order_relaxed);
    if (chunk == nullptr) {
      chunk = new T[kChunkSize];
      chunks_[c].store(chunk, std::memory_order_release);
    }
    chunk[i & (kChunkSize - 1)] = std::move(value);
    ++size_;
    return static_cast<std::uint32_t>(i);
  }

 private:
  std::array<std::atomic<T*>, kMaxChunks> chunks_{};
  std::size_t size_ = 0;
};

struct TermEntry {
  std::string name;
  std::unique_ptr<NullOrigin> origin;
};

}  // namespace

class TermPool {
 public:
  static TermPool& instance() {
    static TermPool* pool = new TermPool();
    return *pool;
  }

  Term intern_named(TermKind kind, std::string_view name) {
    std::string key;
    key.reserve(name.size() + 1);
    key.push_back(static_cast<char>('0' + static_cast<int>(kind)));
    key.append(name);
    std::lock_guard lock(mutex_);
    auto it = index_.find(key);
    if (it != index_.end()) return Term(it->second);
    std::uint32_t slot = store_.push(TermEntry{std::string(name), nullptr});
    std::uint32_t id = (static_cast<std::uint32_t>(kind) << Term::kKindShift) | slot;
    index_.emplace(std::move(key), id);
    return Term(id);
  }

  Term intern_null(const NullOrigin& origin) {
    std::string key = "2";
    key += origin.rule_id;
    key.push_back('\0');
    key += origin.variable;
    for (const auto& [var, term] : origin.bindings) {
      key.push_back('\0');
      key += var;
      key.push_back('=');
      key += std::to_string(term.id());
    }
    std::lock_guard lock(mutex_);
    auto it = index_.find(key);
    if (it != index_.end()) return Term(it->second);
    std::string name = "_" + origin.variable + "_" + std::to_string(null_count_++);
    std::uint32_t slot =
        store_.push(TermEntry{std::move(name), std::make_unique<NullOrigin>(origin)});
    std::uint32_t id = (static_cast<std::uint32_t>(TermKind::Null) << Term::kKindShift) | slot;
    index_.emplace(std::move(key), id);
    return Term(id);
  }

  const TermEntry& entry(Term t) const { return store_[t.id() & kSlotMask]; }

  std::uint32_t intern_predicate(std::string_view name) {
    std::lock_guard lock(mutex_);
    auto it = predicates_.find(std::string(name));
    if (it != predicates_.end()) return it->second;
    std::uint32_t id = predicate_names_.push(std::string(name));
    predicates_.emplace(std::string(name), id);
    return id;
  }

  const std::string& predicate_name(std::uint32_t id) const { return predicate_names_[id]; }

 private:
  static constexpr std::uint32_t kSlotMask = (std::uint32_t{1} << Term::kKindShift) - 1;

  TermPool() = default;

  std::mutex mutex_;
  std::unordered_map<std::string, std::uint32_t> index_;
  ChunkedStore<TermEntry> store_;
  std::uint64_t null_count_ = 0;
  std::unordered_map<std::string, std::uint32_t> predicates_;
  ChunkedStore<std::string> predicate_names_;
};

Term Term::constant(std::string_view name) {
  return TermPool::instance().intern_named(TermKind::Constant, name);
}

Term Term::variable(std::string_view name) {
  return TermPool::instance().intern_named(TermKind::Variable, name);
}

Term Term::null(const NullOrigin& origin) { return TermPool::instance().intern_null(origin); }

const std::string& Term::name() const { return TermPool::instance().entry(*this).name; }

const NullOrigin& Term::origin() const {
  const auto& e = TermPool::instance().entry(*this);
  if (!e.origin) throw std::logic_error("term is not a null: " + e.name);
  return *e.origin;
}

std::strong_ordering term_compare(Term a, Term b) {
  if (a == b) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  if (!a.is_null()) return a.name().compare(b.name()) <=> 0;
  const NullOrigin& x = a.origin();
  const NullOrigin& y = b.origin();
  if (auto c = x.rule_id.compare(y.rule_id) <=> 0; c != 0) return c;
  if (auto c = x.variable.compare(y.variable) <=> 0; c != 0) return c;
  std::size_t n = std::min(x.bindings.size(), y.bindings.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = x.bindings[i].first.compare(y.bindings[i].first) <=> 0; c != 0) return c;
    if (auto c = term_compare(x.bindings[i].second, y.bindings[i].second); c != 0) return c;
  }
  return x.bindings.size() <=> y.bindings.size();
}

bool term_less(Term a, Term b) { return term_compare(a, b) < 0; }

std::string to_string(Term t) { return t.valid() ? t.name() : std::string("<invalid>"); }

Predicate::Predicate(std::string_view name) : id_(TermPool::instance().intern_predicate(name)) {}

const std::string& Predicate::name() const { return TermPool::instance().predicate_name(id_); }

}  // namespace kbound
