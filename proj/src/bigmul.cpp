#include "classtab/bigmul.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "classtab/digest.hpp"
#include "classtab/modarith.hpp"
#include "classtab/ntt.hpp"

namespace classtab {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

unsigned bit_length(u128 v)
{
    unsigned n = 0;
    while (v != 0) {
        v >>= 1;
        ++n;
    }
    return n;
}

void put_bits(u64 * limbs, std::size_t pos, u64 v, unsigned s)
{
    std::size_t w = pos / 64;
    unsigned off = pos % 64;
    limbs[w] |= v << off;
    if (off != 0 && off + s > 64) {
        limbs[w + 1] |= v >> (64 - off);
    }
}

u64 get_bits(u64 const * limbs, unsigned nlimbs, std::size_t pos, unsigned s)
{
    std::size_t w = pos / 64;
    unsigned off = pos % 64;
    u64 v = limbs[w] >> off;
    if (off != 0 && off + s > 64 && w + 1 < nlimbs) {
        v |= limbs[w + 1] << (64 - off);
    }
    return s == 64 ? v : v & ((u64{1} << s) - 1);
}

/* highest set bit + 1 of a limb array */
unsigned limb_bits(u64 const * limbs, unsigned nlimbs)
{
    for (unsigned w = nlimbs; w-- > 0;) {
        if (limbs[w] != 0) {
            return 64 * w + 64 - static_cast<unsigned>(__builtin_clzll(limbs[w]));
        }
    }
    return 0;
}

/* Extracts h_k for k in [k0, k1); H(n) returns the limbs of bundle product n. */
template <class Get>
void extract_range(Get && H, unsigned limbs, std::size_t B, unsigned s, std::size_t k0,
                   std::size_t k1, coeff_table & out)
{
    u64 limit = s == 64 ? ~u64{0} : (u64{1} << s) - 1;
    for (std::size_t k = k0; k < k1; ++k) {
        std::size_t n = k / B, j = k % B;
        u64 h = get_bits(H(n), limbs, j * s, s);
        if (n > 0 && j != B - 1) {
            u64 hi = get_bits(H(n - 1), limbs, (B + j) * s, s);
            if (__builtin_add_overflow(h, hi, &h)) {
                throw std::overflow_error("product coefficient exceeds 64 bits");
            }
        }
        if (h > limit) {
            throw std::overflow_error("product coefficient " + std::to_string(k)
                                      + " does not fit in s = " + std::to_string(s) + " bits");
        }
        out.set(k, h);
    }
}

u64 mod_limbs(u64 const * limbs, unsigned n, u64 p)
{
    u128 r = 0;
    for (unsigned w = n; w-- > 0;) {
        r = ((r << 64) | limbs[w]) % p;
    }
    return static_cast<u64>(r);
}

/* balanced product tree over a list of moduli */
struct product_tree
{
    struct node
    {
        mpz_class m;
        mpz_class left_inv; /* (left product)^{-1} mod right product */
        int left = -1, right = -1;
        std::size_t lo = 0, hi = 0;
    };
    std::vector<node> nodes;
    int root = -1;

    explicit product_tree(std::vector<u64> const & primes)
    {
        root = build(primes, 0, primes.size());
    }

    int build(std::vector<u64> const & primes, std::size_t lo, std::size_t hi)
    {
        node nd;
        nd.lo = lo;
        nd.hi = hi;
        if (hi - lo == 1) {
            nd.m = mpz_class(static_cast<unsigned long>(primes[lo]));
            nodes.push_back(nd);
            return static_cast<int>(nodes.size() - 1);
        }
        std::size_t mid = lo + (hi - lo) / 2;
        nd.left = build(primes, lo, mid);
        nd.right = build(primes, mid, hi);
        mpz_class const & ml = nodes[static_cast<std::size_t>(nd.left)].m;
        mpz_class const & mr = nodes[static_cast<std::size_t>(nd.right)].m;
        nd.m = ml * mr;
        if (mpz_invert(nd.left_inv.get_mpz_t(), ml.get_mpz_t(), mr.get_mpz_t()) == 0) {
            throw std::invalid_argument("CRT moduli are not coprime");
        }
        nodes.push_back(nd);
        return static_cast<int>(nodes.size() - 1);
    }

    node const & at(int i) const { return nodes[static_cast<std::size_t>(i)]; }

    /* x mod p_i for every leaf, descending from the root */
    void remainders(int i, mpz_class const & x, u64 * out, mpz_class & scratch) const
    {
        node const & nd = at(i);
        if (nd.left < 0) {
            out[nd.lo] = mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(mpz_get_ui(nd.m.get_mpz_t())));
            return;
        }
        if (x >= nd.m) {
            mpz_class y;
            mpz_fdiv_r(y.get_mpz_t(), x.get_mpz_t(), nd.m.get_mpz_t());
            remainders(nd.left, y, out, scratch);
            remainders(nd.right, y, out, scratch);
        } else {
            remainders(nd.left, x, out, scratch);
            remainders(nd.right, x, out, scratch);
        }
    }

    /* CRT combination of residues r[lo..hi) */
    mpz_class combine(int i, u64 const * r) const
    {
        node const & nd = at(i);
        if (nd.left < 0) {
            return mpz_class(static_cast<unsigned long>(r[nd.lo]));
        }
        mpz_class xl = combine(nd.left, r);
        mpz_class xr = combine(nd.right, r);
        node const & l = at(nd.left);
        node const & rt = at(nd.right);
        mpz_class t = xr - xl;
        t *= nd.left_inv;
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), rt.m.get_mpz_t());
        return xl + l.m * t;
    }
};

void check_primes(std::vector<u64> const & primes)
{
    if (primes.empty()) {
        throw std::invalid_argument("prime basis is empty");
    }
    static_assert(sizeof(unsigned long) == 8, "GMP ui functions must take 64-bit values");
}

std::vector<std::vector<u64>> reduce_direct(big_poly const & F, std::vector<u64> const & primes)
{
    std::vector<std::vector<u64>> out(primes.size(), std::vector<u64>(F.count));
    for (std::size_t k = 0; k < F.count; ++k) {
        for (std::size_t i = 0; i < primes.size(); ++i) {
            out[i][k] = mod_limbs(F.at(k), F.limbs, primes[i]);
        }
    }
    return out;
}

std::vector<std::vector<u64>> reduce_tree(big_poly const & F, std::vector<u64> const & primes)
{
    product_tree tree(primes);
    std::vector<std::vector<u64>> out(primes.size(), std::vector<u64>(F.count));
    std::vector<u64> r(primes.size());
    mpz_class scratch;
    for (std::size_t k = 0; k < F.count; ++k) {
        tree.remainders(tree.root, F.value(k), r.data(), scratch);
        for (std::size_t i = 0; i < primes.size(); ++i) {
            out[i][k] = r[i];
        }
    }
    return out;
}

/* ------------------------------------------------------------------ */
/* disk staging */

void write_at(fs::path const & path, std::size_t offset, std::vector<u64> const & v)
{
    int fd = ::open(path.c_str(), O_WRONLY);
    if (fd < 0) {
        throw staging_error("cannot open " + path.string() + " for writing");
    }
    auto const * p = reinterpret_cast<char const *>(v.data());
    std::size_t left = v.size() * sizeof(u64);
    off_t pos = static_cast<off_t>(offset);
    while (left > 0) {
        ssize_t w = ::pwrite(fd, p, left, pos);
        if (w <= 0) {
            ::close(fd);
            throw staging_error("short write to " + path.string());
        }
        p += w;
        left -= static_cast<std::size_t>(w);
        pos += w;
    }
    ::close(fd);
}

std::vector<u64> read_at(fs::path const & path, std::size_t offset, std::size_t count)
{
    std::ifstream in(path, std::ios::binary);
    in.seekg(static_cast<std::streamoff>(offset));
    std::vector<u64> v(count);
    in.read(reinterpret_cast<char *>(v.data()), static_cast<std::streamsize>(count * sizeof(u64)));
    if (!in) {
        throw staging_error("truncated staging file " + path.string());
    }
    return v;
}

void create_sized(fs::path const & path, std::size_t bytes)
{
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw staging_error("cannot create " + path.string());
        }
    }
    fs::resize_file(path, bytes);
}

void check_size(fs::path const & path, std::size_t bytes)
{
    std::error_code ec;
    auto actual = fs::file_size(path, ec);
    if (ec || actual != bytes) {
        throw staging_error("staging file " + path.string() + " has wrong size");
    }
}

std::string table_digest(coeff_table const & t, std::size_t length)
{
    sha256 h;
    std::size_t step = std::size_t{1} << 20;
    for (std::size_t first = 0; first < length; first += step) {
        std::size_t n = std::min(step, length - first);
        std::vector<u64> v;
        if (first < t.length()) {
            v = t.values(first, std::min(n, t.length() - first));
        }
        v.resize(n, 0);
        h.update(v.data(), v.size() * sizeof(u64));
    }
    return h.hex();
}

struct disk_layout
{
    fs::path dir;
    std::size_t chunk_len = 0;
    std::size_t chunks = 0;
    std::size_t N0 = 0;
    std::size_t nprimes = 0;

    std::size_t first(std::size_t c) const { return c * chunk_len; }
    std::size_t count(std::size_t c) const { return std::min(chunk_len, N0 - first(c)); }
    std::size_t bytes(std::size_t c) const { return nprimes * count(c) * sizeof(u64); }
    fs::path file(char const * kind, std::size_t c) const
    {
        return dir / (std::string(kind) + ".8b." + std::to_string(c) + ".chunk");
    }
};

json stage_digests(disk_layout const & lay, std::vector<char const *> const & kinds)
{
    json out = json::object();
    for (auto kind : kinds) {
        for (std::size_t c = 0; c < lay.chunks; ++c) {
            auto path = lay.file(kind, c);
            check_size(path, lay.bytes(c));
            out[path.filename().string()] = sha256_file(path);
        }
    }
    return out;
}

/* true when the stage is recorded complete and its files still match */
bool stage_done(json const & manifest, char const * stage, disk_layout const & lay)
{
    if (!manifest.contains("stages") || !manifest["stages"].contains(stage)) {
        return false;
    }
    for (auto const & [name, digest] : manifest["stages"][stage].items()) {
        auto path = lay.dir / name;
        if (!fs::exists(path)) {
            return false;
        }
        if (sha256_file(path) != digest.get<std::string>()) {
            throw staging_error("checksum mismatch on resume: " + path.string());
        }
    }
    return true;
}

void save_manifest(fs::path const & path, json const & manifest)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << manifest.dump(2) << "\n";
        if (!out) {
            throw staging_error("cannot write manifest " + path.string());
        }
    }
    fs::rename(tmp, path);
}

} // namespace

/* ------------------------------------------------------------------ */

bundle_params bundle_params::make(std::size_t length, std::size_t B, unsigned s)
{
    if (B == 0 || (B & (B - 1)) != 0) {
        throw std::invalid_argument("bundling factor must be a power of two");
    }
    if (s < 1 || s > 64) {
        throw std::invalid_argument("coefficient bit size must be in [1, 64]");
    }
    if (length == 0) {
        throw std::invalid_argument("length must be positive");
    }
    bundle_params p;
    p.B = B;
    p.s = s;
    p.N0 = (length + B - 1) / B;
    return p;
}

bundle_params bundle_params::for_inputs(coeff_table const & f, coeff_table const & g,
                                        std::size_t out_length, std::size_t B)
{
    auto maxof = [out_length](coeff_table const & t) {
        auto v = t.values(0, std::min(t.length(), out_length));
        return v.empty() ? u64{0} : *std::max_element(v.begin(), v.end());
    };
    u128 bound = static_cast<u128>(maxof(f)) * maxof(g);
    std::size_t terms = std::min({f.length(), g.length(), out_length});
    unsigned s = bit_length(bound) + bit_length(terms);
    s = std::max(s, bit_length(maxof(f)));
    s = std::max(s, bit_length(maxof(g)));
    return make(out_length, B, std::clamp(s, 1u, 64u));
}

mpz_class big_poly::value(std::size_t i) const
{
    mpz_class v;
    mpz_import(v.get_mpz_t(), limbs, -1, sizeof(u64), 0, 0, at(i));
    return v;
}

void big_poly::assign(std::size_t i, mpz_class const & v)
{
    if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64 * std::size_t{limbs}) {
        throw std::overflow_error("value does not fit the limb count");
    }
    u64 * dst = at(i);
    std::fill(dst, dst + limbs, 0);
    mpz_export(dst, nullptr, -1, sizeof(u64), 0, 0, v.get_mpz_t());
}

big_poly bundle(coeff_table const & f, bundle_params const & params, std::size_t first,
                std::size_t count)
{
    big_poly out(count, params.in_limbs());
    std::size_t k0 = first * params.B;
    std::size_t want = count * params.B;
    std::vector<u64> coeffs;
    if (k0 < f.length()) {
        coeffs = f.values(k0, std::min(want, f.length() - k0));
    }
    u64 limit = params.s == 64 ? ~u64{0} : (u64{1} << params.s) - 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        u64 v = coeffs[i];
        if (v == 0) {
            continue;
        }
        if (v > limit) {
            throw std::overflow_error("input coefficient exceeds s bits");
        }
        put_bits(out.at(i / params.B), (i % params.B) * params.s, v, params.s);
    }
    return out;
}

big_poly bundle(coeff_table const & f, bundle_params const & params)
{
    return bundle(f, params, 0, params.N0);
}

coeff_table unbundle_product(big_poly const & H, std::size_t B, unsigned s,
                             std::size_t out_length, unsigned width)
{
    if (out_length > H.count * B) {
        throw std::invalid_argument("out_length exceeds the bundled product length");
    }
    if (static_cast<std::size_t>(H.limbs) * 64 < (2 * B - 1) * s) {
        throw std::invalid_argument("bundle product limbs too narrow for (2B-1)s bits");
    }
    coeff_table out(out_length, width);
    extract_range([&](std::size_t n) { return H.at(n); }, H.limbs, B, s, 0, out_length, out);
    return out;
}

std::vector<std::vector<u64>> reduce_mod_basis(big_poly const & F, std::vector<u64> const & primes,
                                               reduce_method method)
{
    check_primes(primes);
    if (method == reduce_method::automatic) {
        /* the tree only pays off once many primes share each bundle */
        method = primes.size() >= 64 ? reduce_method::tree : reduce_method::direct;
    }
    return method == reduce_method::tree ? reduce_tree(F, primes) : reduce_direct(F, primes);
}

std::vector<std::vector<u64>> reduce_mod_basis(big_poly const & F, prime_basis const & basis,
                                               reduce_method method)
{
    return reduce_mod_basis(F, basis.moduli(), method);
}

big_poly crt_reconstruct(std::vector<std::vector<u64>> const & residues,
                         std::vector<u64> const & primes, unsigned out_limbs)
{
    check_primes(primes);
    if (residues.size() != primes.size()) {
        throw std::invalid_argument("one residue polynomial per prime required");
    }
    std::size_t count = residues[0].size();
    for (auto const & r : residues) {
        if (r.size() != count) {
            throw std::invalid_argument("residue polynomials differ in length");
        }
    }
    product_tree tree(primes);
    if (out_limbs == 0) {
        out_limbs = static_cast<unsigned>((mpz_sizeinbase(tree.at(tree.root).m.get_mpz_t(), 2) + 63) / 64);
    }
    big_poly out(count, out_limbs);
    std::vector<u64> r(primes.size());
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t i = 0; i < primes.size(); ++i) {
            r[i] = residues[i][k] % primes[i];
        }
        out.assign(k, tree.combine(tree.root, r.data()));
    }
    return out;
}

big_poly crt_reconstruct(std::vector<std::vector<u64>> const & residues,
                         prime_basis const & basis, unsigned out_limbs)
{
    return crt_reconstruct(residues, basis.moduli(), out_limbs);
}

namespace {

/* CRT of bundle products [first, first+count) from per-prime rows, checked against out_bits */
big_poly crt_window(std::vector<std::vector<u64>> const & rows, std::size_t offset, std::size_t count,
                    product_tree const & tree, bundle_params const & params)
{
    big_poly out(count, params.out_limbs());
    std::vector<u64> r(rows.size());
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            r[i] = rows[i][offset + k];
        }
        out.assign(k, tree.combine(tree.root, r.data()));
        if (limb_bits(out.at(k), out.limbs) > params.out_bits()) {
            throw std::overflow_error("bundle product exceeds (2B-1)s bits; s is too small");
        }
    }
    return out;
}

coeff_table multiply_memory(coeff_table const & f, coeff_table const & g, bundle_params const & params,
                            prime_basis const & basis, staging_config const & staging,
                            std::size_t out_length, unsigned width)
{
    auto primes = basis.moduli();
    std::size_t N0 = params.N0;
    big_poly F = bundle(f, params);
    big_poly G = bundle(g, params);
    auto rf = reduce_mod_basis(F, primes, staging.reduction);
    auto rg = reduce_mod_basis(G, primes, staging.reduction);
    F = {};
    G = {};

    std::vector<std::vector<u64>> prod(primes.size());
    parallel_for(primes.size(), staging.threads, [&](std::size_t i) {
        prod[i] = ntt_mul(rf[i], rg[i], basis[i], N0);
        rf[i].clear();
        rg[i].clear();
    });

    product_tree tree(primes);
    coeff_table out(out_length, width);
    std::size_t block = 4096;
    std::size_t blocks = (N0 + block - 1) / block;
    parallel_for(blocks, staging.threads, [&](std::size_t b) {
        std::size_t first = b * block;
        std::size_t lo = first == 0 ? 0 : first - 1; /* previous bundle feeds the carry digits */
        std::size_t hi = std::min(first + block, N0);
        big_poly H = crt_window(prod, lo, hi - lo, tree, params);
        std::size_t k0 = std::min(first * params.B, out_length);
        std::size_t k1 = std::min(hi * params.B, out_length);
        extract_range([&](std::size_t n) { return H.at(n - lo); }, H.limbs, params.B, params.s, k0, k1,
                      out);
    });
    return out;
}

coeff_table multiply_disk(coeff_table const & f, coeff_table const & g, bundle_params const & params,
                          prime_basis const & basis, staging_config const & staging,
                          std::size_t out_length, unsigned width)
{
    if (staging.dir.empty()) {
        throw staging_error("disk staging needs a directory");
    }
    fs::create_directories(staging.dir);
    auto primes = basis.moduli();

    disk_layout lay;
    lay.dir = staging.dir;
    lay.N0 = params.N0;
    lay.nprimes = primes.size();
    std::size_t m = staging.chunks != 0 ? staging.chunks : 4 * std::max(1u, staging.threads);
    lay.chunk_len = (params.N0 + m - 1) / m;
    lay.chunks = (params.N0 + lay.chunk_len - 1) / lay.chunk_len;

    json identity = {
        {"N", params.length()},
        {"B", params.B},
        {"s", params.s},
        {"N0", params.N0},
        {"chunks", lay.chunks},
        {"primes", primes},
        {"inputs", {{"f", table_digest(f, params.length())}, {"g", table_digest(g, params.length())}}},
    };
    fs::path manifest_path = lay.dir / "run.json";
    json manifest;
    if (fs::exists(manifest_path)) {
        try {
            std::ifstream in(manifest_path);
            manifest = json::parse(in);
        } catch (json::exception const &) {
            throw staging_error("unreadable manifest " + manifest_path.string());
        }
        if (manifest.value("identity", json()) != identity) {
            manifest = json();
        }
    }
    if (manifest.is_null()) {
        manifest = {{"identity", identity}, {"stages", json::object()}};
    }

    /* stage 1+2: bundle and reduce, one task per (input, chunk) */
    if (!stage_done(manifest, "reduce", lay)) {
        parallel_for(2 * lay.chunks, staging.threads, [&](std::size_t task) {
            std::size_t c = task / 2;
            coeff_table const & src = task % 2 == 0 ? f : g;
            auto path = lay.file(task % 2 == 0 ? "resf" : "resg", c);
            big_poly P = bundle(src, params, lay.first(c), lay.count(c));
            auto res = reduce_mod_basis(P, primes, staging.reduction);
            std::vector<u64> flat;
            flat.reserve(primes.size() * lay.count(c));
            for (auto const & row : res) {
                flat.insert(flat.end(), row.begin(), row.end());
            }
            create_sized(path, lay.bytes(c));
            write_at(path, 0, flat);
            check_size(path, lay.bytes(c));
        });
        manifest["stages"]["reduce"] = stage_digests(lay, {"resf", "resg"});
        manifest["stages"].erase("multiply");
        save_manifest(manifest_path, manifest);
    }

    /* stage 3: one NTT product per prime, scattered into the product chunks */
    if (!stage_done(manifest, "multiply", lay)) {
        for (std::size_t c = 0; c < lay.chunks; ++c) {
            create_sized(lay.file("prod", c), lay.bytes(c));
        }
        parallel_for(primes.size(), staging.threads, [&](std::size_t i) {
            std::vector<u64> a, b;
            a.reserve(lay.N0);
            b.reserve(lay.N0);
            for (std::size_t c = 0; c < lay.chunks; ++c) {
                auto ra = read_at(lay.file("resf", c), i * lay.count(c) * sizeof(u64), lay.count(c));
                auto rb = read_at(lay.file("resg", c), i * lay.count(c) * sizeof(u64), lay.count(c));
                a.insert(a.end(), ra.begin(), ra.end());
                b.insert(b.end(), rb.begin(), rb.end());
            }
            auto prod = ntt_mul(a, b, basis[i], lay.N0);
            for (std::size_t c = 0; c < lay.chunks; ++c) {
                std::vector<u64> part(prod.begin() + static_cast<std::ptrdiff_t>(lay.first(c)),
                                      prod.begin() + static_cast<std::ptrdiff_t>(lay.first(c) + lay.count(c)));
                write_at(lay.file("prod", c), i * lay.count(c) * sizeof(u64), part);
            }
        });
        manifest["stages"]["multiply"] = stage_digests(lay, {"prod"});
        save_manifest(manifest_path, manifest);
    }

    /* stage 4+5: CRT and extraction per chunk */
    product_tree tree(primes);
    coeff_table out(out_length, width);
    parallel_for(lay.chunks, staging.threads, [&](std::size_t c) {
        std::size_t first = lay.first(c), count = lay.count(c);
        std::vector<std::vector<u64>> rows(primes.size());
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (c > 0) {
                /* last bundle of the previous chunk feeds the carry digits */
                std::size_t pc = lay.count(c - 1);
                rows[i] = read_at(lay.file("prod", c - 1), (i * pc + pc - 1) * sizeof(u64), 1);
            }
            auto part = read_at(lay.file("prod", c), i * count * sizeof(u64), count);
            rows[i].insert(rows[i].end(), part.begin(), part.end());
        }
        std::size_t lo = c > 0 ? first - 1 : 0;
        big_poly H = crt_window(rows, 0, rows[0].size(), tree, params);
        std::size_t k0 = std::min(first * params.B, out_length);
        std::size_t k1 = std::min((first + count) * params.B, out_length);
        extract_range([&](std::size_t n) { return H.at(n - lo); }, H.limbs, params.B, params.s, k0, k1, out);
    });
    return out;
}

} // namespace

coeff_table multiply(coeff_table const & f, coeff_table const & g, bundle_params const & params,
                     prime_basis const & basis, staging_config const & staging,
                     std::size_t out_length, unsigned width)
{
    if (out_length == 0) {
        out_length = params.length();
    }
    if (out_length > params.length()) {
        throw std::invalid_argument("out_length exceeds B * N0");
    }
    if (basis.empty()) {
        throw std::invalid_argument("prime basis is empty");
    }
    if (!(basis.log2_capacity() > params.out_bits())) {
        throw std::invalid_argument("prime basis capacity does not cover (2B-1)s bits");
    }
    std::size_t n = 1;
    unsigned k = 0;
    while (n < 2 * params.N0 - 1) {
        n *= 2;
        ++k;
    }
    if (k > basis.max_log_length()) {
        throw std::invalid_argument("bundle count exceeds the transform length of the basis");
    }

    bool disk = staging.where == staging_config::mode::disk;
    if (staging.where == staging_config::mode::automatic) {
        std::size_t estimate = params.N0 * sizeof(u64)
            * (2 * params.in_limbs() + params.out_limbs() + 3 * basis.size())
            + 4 * n * sizeof(u64) * std::max(1u, staging.threads);
        disk = estimate > staging.memory_budget && !staging.dir.empty();
    }
    return disk ? multiply_disk(f, g, params, basis, staging, out_length, width)
                : multiply_memory(f, g, params, basis, staging, out_length, width);
}

coeff_table multiply(coeff_table const & f, coeff_table const & g, std::size_t out_length,
                     std::size_t B, staging_config const & staging)
{
    auto params = bundle_params::for_inputs(f, g, out_length, B);
    auto basis = prime_basis::for_capacity(params.out_bits());
    return multiply(f, g, params, basis, staging, out_length);
}

} // namespace classtab
