#include "kbg/simplicial.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace kbg {

namespace {

// Tokens with comments stripped; the format is whitespace-insensitive apart
// from section order.
std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string w;
        while (words >> w) tokens.push_back(w);
    }
    return tokens;
}

class TokenReader {
public:
    explicit TokenReader(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {}

    std::string keyword(const std::string& expect) {
        if (pos_ >= tokens_.size())
            throw InvalidComplexError("unexpected end of input, expected " + expect);
        std::string t = tokens_[pos_++];
        if (t != expect)
            throw InvalidComplexError("expected " + expect + ", found \"" + t + "\"");
        return t;
    }

    long integer(const std::string& what) {
        if (pos_ >= tokens_.size())
            throw InvalidComplexError("unexpected end of input, expected " + what);
        const std::string& t = tokens_[pos_++];
        try {
            std::size_t used = 0;
            long v = std::stol(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw InvalidComplexError("expected an integer for " + what + ", found \"" + t +
                                      "\"");
        }
    }

    bool exhausted() const { return pos_ == tokens_.size(); }

private:
    std::vector<std::string> tokens_;
    std::size_t pos_ = 0;
};

} // namespace

SimplicialComplex parse_complex(const std::string& text) {
    TokenReader reader(tokenize(text));
    SimplicialComplex c;

    reader.keyword("VERTICES");
    long v = reader.integer("vertex count");
    if (v < 0) throw InvalidComplexError("negative vertex count");
    c.vertex_count = static_cast<std::size_t>(v);

    auto vertex = [&](const std::string& what) {
        long id = reader.integer(what);
        if (id < 0 || id >= v)
            throw InvalidComplexError("vertex id " + std::to_string(id) + " out of range [0, " +
                                      std::to_string(v) + ")");
        return static_cast<int>(id);
    };

    reader.keyword("EDGES");
    long e = reader.integer("edge count");
    if (e < 0) throw InvalidComplexError("negative edge count");
    std::map<std::pair<int, int>, std::size_t> edge_index;
    for (long k = 0; k < e; ++k) {
        int a = vertex("edge endpoint");
        int b = vertex("edge endpoint");
        if (a == b)
            throw InvalidComplexError("edge " + std::to_string(k) + " is degenerate (" +
                                      std::to_string(a) + ", " + std::to_string(b) + ")");
        auto key = std::minmax(a, b);
        if (edge_index.count(key))
            throw InvalidComplexError("duplicate edge (" + std::to_string(a) + ", " +
                                      std::to_string(b) + ")");
        edge_index[key] = c.edges.size();
        c.edges.push_back({a, b});
    }

    reader.keyword("FACES");
    long f = reader.integer("face count");
    if (f < 0) throw InvalidComplexError("negative face count");
    std::map<std::array<int, 3>, std::size_t> face_index;
    for (long k = 0; k < f; ++k) {
        std::array<int, 3> face = {vertex("face vertex"), vertex("face vertex"),
                                   vertex("face vertex")};
        std::array<int, 3> sorted = face;
        std::sort(sorted.begin(), sorted.end());
        if (sorted[0] == sorted[1] || sorted[1] == sorted[2])
            throw InvalidComplexError("face " + std::to_string(k) +
                                      " repeats a vertex");
        if (face_index.count(sorted))
            throw InvalidComplexError("duplicate face (" + std::to_string(face[0]) + ", " +
                                      std::to_string(face[1]) + ", " +
                                      std::to_string(face[2]) + ")");
        face_index[sorted] = c.faces.size();
        for (int s = 0; s < 3; ++s) {
            auto key = std::minmax(face[s], face[(s + 1) % 3]);
            if (!edge_index.count(key))
                throw InvalidComplexError("face (" + std::to_string(face[0]) + ", " +
                                          std::to_string(face[1]) + ", " +
                                          std::to_string(face[2]) + ") side (" +
                                          std::to_string(key.first) + ", " +
                                          std::to_string(key.second) +
                                          ") is not a listed edge");
        }
        c.faces.push_back(face);
    }

    if (!reader.exhausted()) throw InvalidComplexError("trailing tokens after FACES section");
    return c;
}

SimplicialComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidComplexError("cannot open complex file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_complex(buf.str());
}

HeatModel hodge_even_odd_operator(const SimplicialComplex& complex) {
    const std::size_t nv = complex.vertex_count;
    const std::size_t ne = complex.edges.size();
    const std::size_t nf = complex.faces.size();

    std::map<std::pair<int, int>, std::size_t> edge_index;
    for (std::size_t i = 0; i < ne; ++i)
        edge_index[std::minmax(complex.edges[i][0], complex.edges[i][1])] = i;

    // Gradient block: edge (u, v) reads f(v) - f(u).
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(ne),
                                                static_cast<Eigen::Index>(nv + nf));
    for (std::size_t i = 0; i < ne; ++i) {
        d(static_cast<Eigen::Index>(i), complex.edges[i][0]) -= 1.0;
        d(static_cast<Eigen::Index>(i), complex.edges[i][1]) += 1.0;
    }
    // Curl adjoint block: face column sends the face to its boundary loop,
    // signed by whether each side's stored direction matches the traversal.
    for (std::size_t k = 0; k < nf; ++k) {
        const std::array<int, 3>& face = complex.faces[k];
        for (int s = 0; s < 3; ++s) {
            int from = face[s];
            int to = face[(s + 1) % 3];
            std::size_t e = edge_index.at(std::minmax(from, to));
            double sign = complex.edges[e][0] == from ? 1.0 : -1.0;
            d(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(nv + k)) += sign;
        }
    }

    HeatModel model;
    model.d = std::move(d);
    model.label = std::to_string(nv) + " vertices, " + std::to_string(ne) + " edges, " +
                  std::to_string(nf) + " faces";
    return model;
}

} // namespace kbg
