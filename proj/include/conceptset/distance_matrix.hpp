#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <queue>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "conceptset/errors.hpp"
#include "conceptset/graph.hpp"
#include "conceptset/vocab.hpp"

namespace conceptset {

/// Symmetric |V|x|V| matrix of weighted shortest-path distances. Entries are
/// 32-bit floats: path lengths accumulate in double and are rounded once when
/// a value is stored, so save/load round-trips are bit-exact. Immutable in
/// normal use; unlimited concurrent readers.
class DistanceMatrix {
public:
    /// A blank matrix: every off-diagonal entry at max_dist, diagonal at
    /// self_dist. Used by the builder and by hand-crafted fixtures.
    DistanceMatrix(ConceptVocabulary vocab, float self_dist, float max_dist)
        : vocab_(std::move(vocab)), self_dist_(self_dist), max_dist_(max_dist) {
        if (!(max_dist > self_dist) || !(self_dist > 0.0f)) {
            throw Error(ErrorCode::InvalidParams, "require max_dist > self_dist > 0");
        }
        const size_t n = vocab_.size();
        values_.assign(n * n, max_dist);
        for (size_t i = 0; i < n; i++) values_[i * n + i] = self_dist;
    }

    size_t size() const { return vocab_.size(); }
    const ConceptVocabulary& vocab() const { return vocab_; }
    uint64_t vocab_id() const { return vocab_.id(); }
    float self_dist() const { return self_dist_; }
    float max_dist() const { return max_dist_; }
    const std::vector<float>& values() const { return values_; }

    float at(uint32_t i, uint32_t j) const { return values_[size_t(i) * size() + j]; }

    /// Writes both triangles so the matrix stays exactly symmetric.
    void set_symmetric(uint32_t i, uint32_t j, float distance) {
        if (i == j) {
            throw Error(ErrorCode::InvalidParams, "diagonal is fixed at self_dist");
        }
        const size_t n = size();
        values_[size_t(i) * n + j] = distance;
        values_[size_t(j) * n + i] = distance;
    }

    friend bool operator==(const DistanceMatrix& a, const DistanceMatrix& b) {
        return a.vocab_.id() == b.vocab_.id() && a.vocab_.concepts() == b.vocab_.concepts() &&
               a.self_dist_ == b.self_dist_ && a.max_dist_ == b.max_dist_ && a.values_ == b.values_;
    }

    // Row storage for the all-pairs builder.
    void store_row(uint32_t i, const std::vector<float>& row) {
        std::copy(row.begin(), row.end(), values_.begin() + size_t(i) * size());
    }

private:
    ConceptVocabulary vocab_;
    float self_dist_;
    float max_dist_;
    std::vector<float> values_;
};

namespace detail {

/// Dijkstra from one source over nonnegative edge distances, in double.
inline std::vector<double> single_source_distances(const ConceptGraph& graph, uint32_t source) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(graph.size(), kInf);
    dist[source] = 0.0;
    using Item = std::pair<double, uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> frontier;
    frontier.emplace(0.0, source);
    while (!frontier.empty()) {
        auto [d, node] = frontier.top();
        frontier.pop();
        if (d > dist[node]) continue;
        for (const auto& [neighbor, edge] : graph.neighbors(node)) {
            const double candidate = d + edge;
            if (candidate < dist[neighbor]) {
                dist[neighbor] = candidate;
                frontier.emplace(candidate, neighbor);
            }
        }
    }
    return dist;
}

}  // namespace detail

/// All-pairs shortest-path distance matrix over the concept graph.
/// d[i][j] = min(shortest path, max_dist) for i != j; unreachable pairs get
/// max_dist; the diagonal is self_dist. Sources are solved independently
/// (possibly in parallel); the result is deterministic and identical to the
/// sequential computation.
inline DistanceMatrix compute_distance_matrix(const ConceptGraph& graph,
                                              double max_dist = 10.0,
                                              double self_dist = 0.001) {
    if (!(max_dist > self_dist) || !(self_dist > 0.0)) {
        throw Error(ErrorCode::InvalidParams, "require max_dist > self_dist > 0");
    }
    const size_t n = graph.size();
    DistanceMatrix matrix(graph.vocab(), static_cast<float>(self_dist),
                          static_cast<float>(max_dist));

    auto solve_range = [&](uint32_t begin, uint32_t end) {
        std::vector<float> row(n);
        for (uint32_t i = begin; i < end; i++) {
            const std::vector<double> dist = detail::single_source_distances(graph, i);
            for (size_t j = 0; j < n; j++) {
                row[j] = static_cast<float>(std::min(dist[j], max_dist));
            }
            row[i] = static_cast<float>(self_dist);
            matrix.store_row(i, row);
        }
    };

    const size_t hw = std::max<size_t>(1, std::thread::hardware_concurrency());
    const size_t workers = std::min(hw, std::max<size_t>(1, n / 64));
    if (workers <= 1) {
        solve_range(0, static_cast<uint32_t>(n));
    } else {
        std::vector<std::future<void>> tasks;
        const size_t chunk = (n + workers - 1) / workers;
        for (size_t w = 0; w < workers; w++) {
            const uint32_t begin = static_cast<uint32_t>(std::min(w * chunk, n));
            const uint32_t end = static_cast<uint32_t>(std::min(begin + chunk, n));
            if (begin < end) {
                tasks.push_back(std::async(std::launch::async, solve_range, begin, end));
            }
        }
        for (auto& task : tasks) task.get();
    }

    // The two directions of one pair may differ by rounding (path sums
    // associate differently); keep the smaller so symmetry is exact.
    for (uint32_t i = 0; i < n; i++) {
        for (uint32_t j = i + 1; j < n; j++) {
            const float d = std::min(matrix.at(i, j), matrix.at(j, i));
            matrix.set_symmetric(i, j, d);
        }
    }
    return matrix;
}

// --- binary persistence -----------------------------------------------------
//
// Matrix file layout (little-endian):
//   magic "CSDM" | version u16 = 1 | self_dist f32 | max_dist f32 | |V| u32
//   |V| vocabulary records: u16 byte length + UTF-8 lemma
//   |V|^2 f32 values, row-major

namespace detail {

constexpr std::array<char, 4> kMatrixMagic = {'C', 'S', 'D', 'M'};
constexpr uint16_t kMatrixVersion = 1;

inline void put_u16(std::string& out, uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

inline void put_u32(std::string& out, uint32_t v) {
    for (int i = 0; i < 4; i++) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_f32(std::string& out, float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

class ByteReader {
public:
    ByteReader(const char* data, size_t size) : data_(data), size_(size) {}

    bool take(void* out, size_t n) {
        if (pos_ + n > size_) return false;
        std::memcpy(out, data_ + pos_, n);
        pos_ += n;
        return true;
    }

    bool u16(uint16_t& v) {
        unsigned char b[2];
        if (!take(b, 2)) return false;
        v = static_cast<uint16_t>(b[0] | (b[1] << 8));
        return true;
    }

    bool u32(uint32_t& v) {
        unsigned char b[4];
        if (!take(b, 4)) return false;
        v = uint32_t(b[0]) | (uint32_t(b[1]) << 8) | (uint32_t(b[2]) << 16) | (uint32_t(b[3]) << 24);
        return true;
    }

    bool f32(float& v) {
        uint32_t bits;
        if (!u32(bits)) return false;
        std::memcpy(&v, &bits, 4);
        return true;
    }

    size_t remaining() const { return size_ - pos_; }
    const char* cursor() const { return data_ + pos_; }
    void skip(size_t n) { pos_ += n; }

private:
    const char* data_;
    size_t size_;
    size_t pos_ = 0;
};

}  // namespace detail

inline void save_matrix(const DistanceMatrix& matrix, const std::filesystem::path& path) {
    std::string blob;
    const size_t n = matrix.size();
    blob.reserve(18 + n * 10 + n * n * 4);
    blob.append(detail::kMatrixMagic.data(), 4);
    detail::put_u16(blob, detail::kMatrixVersion);
    detail::put_f32(blob, matrix.self_dist());
    detail::put_f32(blob, matrix.max_dist());
    detail::put_u32(blob, static_cast<uint32_t>(n));
    for (const auto& lemma : matrix.vocab().concepts()) {
        if (lemma.size() > 0xffff) {
            throw Error(ErrorCode::InvalidParams, "lemma too long for matrix file: " + lemma);
        }
        detail::put_u16(blob, static_cast<uint16_t>(lemma.size()));
        blob.append(lemma);
    }
    for (float v : matrix.values()) detail::put_f32(blob, v);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open for writing: " + path.string());
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

inline DistanceMatrix load_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open: " + path.string());
    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorCode::IoError, "read failed: " + path.string());

    auto corrupt = [&](const std::string& why) {
        return Error(ErrorCode::CorruptFile, path.string() + ": " + why);
    };

    detail::ByteReader reader(blob.data(), blob.size());
    std::array<char, 4> magic;
    if (!reader.take(magic.data(), 4) || magic != detail::kMatrixMagic) throw corrupt("bad magic");
    uint16_t version;
    if (!reader.u16(version) || version != detail::kMatrixVersion) {
        throw corrupt("unsupported version");
    }
    float self_dist, max_dist;
    uint32_t count;
    if (!reader.f32(self_dist) || !reader.f32(max_dist) || !reader.u32(count)) {
        throw corrupt("truncated header");
    }
    if (count == 0) throw corrupt("empty vocabulary");
    if (!(max_dist > self_dist) || !(self_dist > 0.0f)) throw corrupt("invalid distance bounds");

    std::vector<std::string> lemmas;
    lemmas.reserve(count);
    for (uint32_t i = 0; i < count; i++) {
        uint16_t len;
        if (!reader.u16(len)) throw corrupt("truncated vocabulary block");
        if (reader.remaining() < len) throw corrupt("truncated vocabulary block");
        lemmas.emplace_back(reader.cursor(), len);
        reader.skip(len);
    }
    if (reader.remaining() != size_t(count) * count * 4) throw corrupt("value block size mismatch");

    ConceptVocabulary vocab = [&] {
        try {
            return ConceptVocabulary::from_lemmas(std::move(lemmas));
        } catch (const Error& e) {
            throw corrupt(std::string("invalid vocabulary: ") + e.what());
        }
    }();

    DistanceMatrix matrix(std::move(vocab), self_dist, max_dist);
    std::vector<float> row(count);
    for (uint32_t i = 0; i < count; i++) {
        for (uint32_t j = 0; j < count; j++) reader.f32(row[j]);
        if (!(row[i] == self_dist)) throw corrupt("diagonal entry differs from self_dist");
        matrix.store_row(i, row);
    }
    for (float v : matrix.values()) {
        if (!std::isfinite(v) || v <= 0.0f || v > max_dist) throw corrupt("entry out of range");
    }
    return matrix;
}

}  // namespace conceptset
