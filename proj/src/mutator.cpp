//===----------------------------------------------------------------------===//
// Part of the exmut project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//===----------------------------------------------------------------------===//

#include "exmut/mutator.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "exmut/lexer.hpp"

namespace exmut::mutator {

namespace fs = std::filesystem;

namespace {

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool in_ws = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_ws = true;
      continue;
    }
    if (in_ws && !out.empty()) out += ' ';
    in_ws = false;
    out += c;
  }
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoFailure("short write to " + path.string());
}

Mutant make_mutant(const FunctionSite& site, const std::string& op_id,
                   ByteSpan span, std::string replacement) {
  Mutant m;
  m.site_id = site.id;
  m.file = site.file;
  m.op_id = op_id;
  m.replacement = std::move(replacement);
  m.affected_span = span;
  m.mutant_id = "m" + stable_hash(site.id + "|" + op_id + "|" +
                                  std::to_string(span.begin) + ":" +
                                  std::to_string(span.end));
  return m;
}

}  // namespace

std::string stable_hash(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Mutant> generate_mutants(const FunctionSite& site,
                                     const std::string& source,
                                     const ops::OperatorCatalog& catalog) {
  std::vector<Mutant> out;
  if (site.body_span.end > source.size() ||
      site.body_span.begin >= site.body_span.end)
    throw SpanOutOfRange("body span out of range for " + site.id);

  if (catalog.kind == OperatorKind::Extreme) {
    std::string original = source.substr(site.body_span.begin, site.body_span.size());
    std::string original_norm = collapse_whitespace(original);
    for (const MutationOperator& op :
         ops::extreme_operators_for(site.category, catalog)) {
      if (collapse_whitespace(op.payload) == original_norm) continue;  // identity
      out.push_back(make_mutant(site, op.op_id, site.body_span, op.payload));
    }
  } else {
    for (const ops::TraditionalInstance& inst :
         ops::traditional_operators_for(site, source, catalog)) {
      std::string original =
          source.substr(inst.span.begin, inst.span.end - inst.span.begin);
      if (collapse_whitespace(original) == collapse_whitespace(inst.replacement))
        continue;
      out.push_back(make_mutant(site, inst.op_id, inst.span, inst.replacement));
    }
  }
  return out;
}

std::string apply_mutant(const std::string& original_source, const Mutant& mutant) {
  const ByteSpan span = mutant.affected_span;
  if (span.begin > span.end || span.end > original_source.size())
    throw SpanOutOfRange("mutant " + mutant.mutant_id + " span [" +
                         std::to_string(span.begin) + "," +
                         std::to_string(span.end) + ") exceeds source size " +
                         std::to_string(original_source.size()));

  std::string mutated;
  mutated.reserve(original_source.size() + mutant.replacement.size());
  mutated.append(original_source, 0, span.begin);
  mutated.append(mutant.replacement);
  mutated.append(original_source, span.end, original_source.size() - span.end);

  lex::LexResult lexed = lex::tokenize(mutated);
  if (!lexed.ok || !lex::delimiters_balanced(lexed.tokens))
    throw SyntaxBreak("mutant " + mutant.mutant_id + " breaks the syntax of " +
                      mutant.file);
  return mutated;
}

void copy_tree(const fs::path& from, const fs::path& to,
               const std::vector<std::string>& skip_dirs) {
  std::error_code ec;
  fs::create_directories(to, ec);
  if (ec) throw IoFailure("cannot create " + to.string());

  auto skipped = [&](const fs::path& p) {
    std::string name = p.filename().string();
    if (name == ".git") return true;
    return std::find(skip_dirs.begin(), skip_dirs.end(), name) != skip_dirs.end();
  };

  for (fs::directory_iterator it(from, ec); it != fs::directory_iterator(); ++it) {
    if (ec) throw IoFailure("cannot read directory " + from.string());
    const fs::path& src = it->path();
    fs::path dst = to / src.filename();
    if (it->is_directory()) {
      if (skipped(src)) continue;
      copy_tree(src, dst, skip_dirs);
    } else if (it->is_regular_file()) {
      fs::copy_file(src, dst, fs::copy_options::overwrite_existing, ec);
      if (ec) throw IoFailure("cannot copy " + src.string() + ": " + ec.message());
      // Preserve the executable bit so prebuilt test binaries stay runnable.
      fs::permissions(dst, fs::status(src).permissions(), ec);
    }
  }
}

fs::path materialize_workspace(const fs::path& source_tree,
                               const fs::path& workspace_dir, const Mutant& mutant,
                               const std::vector<std::string>& skip_dirs) {
  copy_tree(source_tree, workspace_dir, skip_dirs);
  fs::path target = workspace_dir / mutant.file;
  std::string original = read_file(target);
  std::string mutated = apply_mutant(original, mutant);
  write_file(target, mutated);
  return workspace_dir;
}

}  // namespace exmut::mutator
