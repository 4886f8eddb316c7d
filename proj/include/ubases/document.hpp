// Copyright 2026 The ubases Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON documents for designs and schemes.
//
//   {"v": 1, "kind": "unitary_basis", "d": 2, "meta": "...", "payload": {...}}
//
// Complex numbers are [re, im] pairs, matrices are row-major nested arrays,
// Latin squares nested integer arrays. Unknown keys are rejected everywhere.
// Loading checks structure and shapes only; the mathematical properties are
// left to the verifiers so that broken documents can still be diagnosed.

#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ubases/errors.hpp"
#include "ubases/latin.hpp"
#include "ubases/matrix.hpp"
#include "ubases/schemes.hpp"
#include "ubases/unitary_basis.hpp"

namespace ubases {

inline constexpr int kDocumentVersion = 1;

enum class DocumentKind { latin, hadamard, unitary_basis, entangled_basis, scheme };

inline const char *to_string(DocumentKind k) {
    switch (k) {
        case DocumentKind::latin:
            return "latin";
        case DocumentKind::hadamard:
            return "hadamard";
        case DocumentKind::unitary_basis:
            return "unitary_basis";
        case DocumentKind::entangled_basis:
            return "entangled_basis";
        case DocumentKind::scheme:
            return "scheme";
    }
    return "?";
}

using DocumentPayload = std::variant<LatinGrid, ComplexMatrix, UnitaryBasis, MaxEntangledBasis, TightScheme>;

struct DesignDocument {
    std::size_t d = 0;
    std::string meta;
    DocumentPayload payload;

    DocumentKind kind() const {
        return static_cast<DocumentKind>(payload.index());
    }
};

namespace detail {

using Json = nlohmann::ordered_json;

inline Json complex_to_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

inline Json matrix_to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); i++) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); j++) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json vector_to_json(const StateVector &v) {
    Json out = Json::array();
    for (std::size_t k = 0; k < v.dim(); k++) {
        out.push_back(complex_to_json(v[k]));
    }
    return out;
}

/// Reads values out of a Json tree, reporting failures with a JSON pointer.
class Reader {
  public:
    [[noreturn]] static void fail(const std::string &path, const std::string &what) {
        throw ParseError((path.empty() ? std::string("/") : path) + ": " + what);
    }

    static const Json &object(const Json &j, const std::string &path, std::initializer_list<const char *> required,
                              std::initializer_list<const char *> optional = {}) {
        if (!j.is_object()) {
            fail(path, "expected an object");
        }
        std::set<std::string> allowed;
        for (const char *k : required) {
            allowed.insert(k);
            if (!j.contains(k)) {
                fail(path, std::string("missing field \"") + k + "\"");
            }
        }
        for (const char *k : optional) {
            allowed.insert(k);
        }
        for (const auto &item : j.items()) {
            if (!allowed.count(item.key())) {
                fail(path, "unknown field \"" + item.key() + "\"");
            }
        }
        return j;
    }

    static const Json &array(const Json &j, const std::string &path) {
        if (!j.is_array()) {
            fail(path, "expected an array");
        }
        return j;
    }

    static std::size_t positive(const Json &j, const std::string &path) {
        if (!j.is_number_integer() || j.get<long long>() < 1) {
            fail(path, "expected a positive integer");
        }
        return j.get<std::size_t>();
    }

    static std::string string(const Json &j, const std::string &path) {
        if (!j.is_string()) {
            fail(path, "expected a string");
        }
        return j.get<std::string>();
    }

    static double number(const Json &j, const std::string &path) {
        if (!j.is_number()) {
            fail(path, "expected a number");
        }
        double v = j.get<double>();
        if (!std::isfinite(v)) {
            fail(path, "non-finite number");
        }
        return v;
    }

    static Complex complex(const Json &j, const std::string &path) {
        if (!j.is_array() || j.size() != 2) {
            fail(path, "expected a [re, im] pair");
        }
        return {number(j[0], path + "/0"), number(j[1], path + "/1")};
    }

    static ComplexMatrix matrix(const Json &j, const std::string &path, std::size_t rows, std::size_t cols) {
        array(j, path);
        if (j.size() != rows) {
            fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
        }
        ComplexMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; i++) {
            const std::string rp = path + "/" + std::to_string(i);
            array(j[i], rp);
            if (j[i].size() != cols) {
                fail(rp, "expected " + std::to_string(cols) + " columns, got " + std::to_string(j[i].size()));
            }
            for (std::size_t c = 0; c < cols; c++) {
                m(i, c) = complex(j[i][c], rp + "/" + std::to_string(c));
            }
        }
        return m;
    }

    static StateVector vector(const Json &j, const std::string &path, std::size_t dim) {
        array(j, path);
        if (j.size() != dim) {
            fail(path, "expected " + std::to_string(dim) + " entries, got " + std::to_string(j.size()));
        }
        StateVector v(dim);
        for (std::size_t k = 0; k < dim; k++) {
            v[k] = complex(j[k], path + "/" + std::to_string(k));
        }
        return v;
    }

    static std::vector<ComplexMatrix> matrices(const Json &j, const std::string &path, std::size_t count,
                                               std::size_t d) {
        array(j, path);
        if (j.size() != count) {
            fail(path, "expected " + std::to_string(count) + " matrices, got " + std::to_string(j.size()));
        }
        std::vector<ComplexMatrix> out;
        for (std::size_t x = 0; x < count; x++) {
            out.push_back(matrix(j[x], path + "/" + std::to_string(x), d, d));
        }
        return out;
    }

    static std::vector<StateVector> vectors(const Json &j, const std::string &path, std::size_t count,
                                            std::size_t dim) {
        array(j, path);
        if (j.size() != count) {
            fail(path, "expected " + std::to_string(count) + " vectors, got " + std::to_string(j.size()));
        }
        std::vector<StateVector> out;
        for (std::size_t x = 0; x < count; x++) {
            out.push_back(vector(j[x], path + "/" + std::to_string(x), dim));
        }
        return out;
    }
};

inline DocumentKind parse_kind(const std::string &s, const std::string &path) {
    for (auto k : {DocumentKind::latin, DocumentKind::hadamard, DocumentKind::unitary_basis,
                   DocumentKind::entangled_basis, DocumentKind::scheme}) {
        if (s == ubases::to_string(k)) {
            return k;
        }
    }
    Reader::fail(path, "unknown kind \"" + s + "\"");
}

inline SchemeMode parse_mode(const std::string &s, const std::string &path) {
    if (s == "teleportation") {
        return SchemeMode::teleportation;
    }
    if (s == "dense_coding") {
        return SchemeMode::dense_coding;
    }
    Reader::fail(path, "unknown mode \"" + s + "\"");
}

inline DocumentPayload parse_payload(DocumentKind kind, std::size_t d, const Json &p) {
    const std::string path = "/payload";
    const std::size_t n = d * d;
    switch (kind) {
        case DocumentKind::latin: {
            Reader::object(p, path, {"grid"});
            const Json &g = Reader::array(p["grid"], path + "/grid");
            if (g.size() != d) {
                Reader::fail(path + "/grid", "expected " + std::to_string(d) + " rows");
            }
            LatinGrid grid;
            for (std::size_t j = 0; j < d; j++) {
                const std::string rp = path + "/grid/" + std::to_string(j);
                const Json &row = Reader::array(g[j], rp);
                if (row.size() != d) {
                    Reader::fail(rp, "expected " + std::to_string(d) + " symbols");
                }
                std::vector<int> r;
                for (std::size_t k = 0; k < d; k++) {
                    if (!row[k].is_number_integer()) {
                        Reader::fail(rp + "/" + std::to_string(k), "expected an integer symbol");
                    }
                    r.push_back(row[k].get<int>());
                }
                grid.push_back(std::move(r));
            }
            return grid;
        }
        case DocumentKind::hadamard: {
            Reader::object(p, path, {"matrix"});
            return Reader::matrix(p["matrix"], path + "/matrix", d, d);
        }
        case DocumentKind::unitary_basis: {
            Reader::object(p, path, {"elements"}, {"labels"});
            auto elements = Reader::matrices(p["elements"], path + "/elements", n, d);
            std::vector<BasisLabel> labels;
            if (p.contains("labels")) {
                const Json &ls = Reader::array(p["labels"], path + "/labels");
                if (ls.size() != n) {
                    Reader::fail(path + "/labels", "expected " + std::to_string(n) + " labels");
                }
                for (std::size_t x = 0; x < n; x++) {
                    const std::string lp = path + "/labels/" + std::to_string(x);
                    if (!ls[x].is_array() || ls[x].size() != 2 || !ls[x][0].is_number_unsigned() ||
                        !ls[x][1].is_number_unsigned() || ls[x][0].get<std::size_t>() >= d ||
                        ls[x][1].get<std::size_t>() >= d) {
                        Reader::fail(lp, "expected an [i, j] pair with entries below d");
                    }
                    labels.push_back({ls[x][0].get<std::size_t>(), ls[x][1].get<std::size_t>()});
                }
            }
            return UnitaryBasis(d, std::move(elements), std::move(labels));
        }
        case DocumentKind::entangled_basis: {
            Reader::object(p, path, {"vectors"});
            return MaxEntangledBasis(d, Reader::vectors(p["vectors"], path + "/vectors", n, n));
        }
        case DocumentKind::scheme: {
            Reader::object(p, path, {"mode", "omega", "channel_unitaries", "effect_vectors"});
            auto mode = parse_mode(Reader::string(p["mode"], path + "/mode"), path + "/mode");
            auto omega = Reader::matrix(p["omega"], path + "/omega", n, n);
            auto channels = Reader::matrices(p["channel_unitaries"], path + "/channel_unitaries", n, d);
            auto effects = Reader::vectors(p["effect_vectors"], path + "/effect_vectors", n, n);
            return TightScheme(std::move(omega), std::move(channels), MaxEntangledBasis(d, std::move(effects)), mode);
        }
    }
    Reader::fail(path, "unreachable");
}

}  // namespace detail

inline nlohmann::ordered_json document_to_json(const DesignDocument &doc) {
    using detail::Json;
    Json payload = Json::object();
    std::visit(
        [&](const auto &p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, LatinGrid>) {
                payload["grid"] = p;
            } else if constexpr (std::is_same_v<T, ComplexMatrix>) {
                payload["matrix"] = detail::matrix_to_json(p);
            } else if constexpr (std::is_same_v<T, UnitaryBasis>) {
                Json elements = Json::array();
                for (const auto &u : p.elements()) {
                    elements.push_back(detail::matrix_to_json(u));
                }
                payload["elements"] = std::move(elements);
                if (!p.labels().empty()) {
                    Json labels = Json::array();
                    for (const auto &l : p.labels()) {
                        labels.push_back(Json::array({l.i, l.j}));
                    }
                    payload["labels"] = std::move(labels);
                }
            } else if constexpr (std::is_same_v<T, MaxEntangledBasis>) {
                Json vectors = Json::array();
                for (const auto &v : p.vectors()) {
                    vectors.push_back(detail::vector_to_json(v));
                }
                payload["vectors"] = std::move(vectors);
            } else {
                payload["mode"] = to_string(p.mode());
                payload["omega"] = detail::matrix_to_json(p.omega());
                Json channels = Json::array();
                for (const auto &u : p.channel_unitaries()) {
                    channels.push_back(detail::matrix_to_json(u));
                }
                payload["channel_unitaries"] = std::move(channels);
                Json effects = Json::array();
                for (const auto &v : p.effects().vectors()) {
                    effects.push_back(detail::vector_to_json(v));
                }
                payload["effect_vectors"] = std::move(effects);
            }
        },
        doc.payload);
    Json j = Json::object();
    j["v"] = kDocumentVersion;
    j["kind"] = to_string(doc.kind());
    j["d"] = doc.d;
    j["meta"] = doc.meta;
    j["payload"] = std::move(payload);
    return j;
}

inline DesignDocument document_from_json(const nlohmann::ordered_json &j) {
    using detail::Reader;
    Reader::object(j, "", {"v", "kind", "d", "payload"}, {"meta"});
    if (!j["v"].is_number_integer() || j["v"].get<long long>() != kDocumentVersion) {
        Reader::fail("/v", "unsupported schema version " + j["v"].dump() + " (expected " +
                               std::to_string(kDocumentVersion) + ")");
    }
    auto kind = detail::parse_kind(Reader::string(j["kind"], "/kind"), "/kind");
    const std::size_t d = Reader::positive(j["d"], "/d");
    if (d > 64) {
        Reader::fail("/d", "dimension too large");
    }
    DesignDocument doc;
    doc.d = d;
    if (j.contains("meta")) {
        doc.meta = Reader::string(j["meta"], "/meta");
    }
    try {
        doc.payload = detail::parse_payload(kind, d, j["payload"]);
    } catch (const ParseError &) {
        throw;
    } catch (const Error &e) {
        Reader::fail("/payload", e.what());
    }
    return doc;
}

inline std::string serialize(const DesignDocument &doc) {
    return document_to_json(doc).dump(2) + "\n";
}

inline DesignDocument deserialize(const std::string &text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError("at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return document_from_json(j);
}

}  // namespace ubases
