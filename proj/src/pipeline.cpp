#include "classica/pipeline.hpp"

namespace classica {

namespace {

bool is_strong_punct(const std::string& token) {
  return token == "." || token == "!" || token == "?" || token == "…";
}

std::vector<std::string> blank_line_blocks(std::string_view text) {
  std::vector<std::string> blocks;
  std::string current;
  size_t start = 0;
  bool block_has_content = false;
  auto flush = [&] {
    if (block_has_content) blocks.push_back(current);
    current.clear();
    block_has_content = false;
  };
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
    if (blank) {
      flush();
    } else {
      current += line;
      current += '\n';
      block_has_content = true;
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  flush();
  return blocks;
}

}  // namespace

std::vector<std::vector<std::string>> segment_text(std::string_view text,
                                                   const NormalizationPolicy& policy) {
  std::vector<std::vector<std::string>> segments;
  for (const auto& block : blank_line_blocks(text)) {
    std::string normalized = normalize_chars(block, policy);
    std::vector<std::string> tokens = tokenize(normalized);
    std::vector<std::string> current;
    for (auto& tok : tokens) {
      bool strong = is_strong_punct(tok);
      current.push_back(std::move(tok));
      if (strong) {
        segments.push_back(std::move(current));
        current.clear();
      }
    }
    if (!current.empty()) segments.push_back(std::move(current));
  }
  return segments;
}

Corpus AnnotationPipeline::annotate_text(std::string_view text) const {
  Corpus corpus;
  for (const auto& forms : segment_text(text, normalization)) {
    Sentence sentence;
    sentence.reserve(forms.size());

    std::vector<std::string> tags;
    if (tagger) tags = tagger->decode(forms);

    for (size_t i = 0; i < forms.size(); ++i) {
      AnnotatedToken tok;
      tok.form = forms[i];
      if (tagger) tok.pos = tags[i];
      if (lemmatizer) tok.lemma = lemmatizer->lemmatize(tok.form, tok.pos);
      sentence.push_back(std::move(tok));
    }

    if (morph_from_aux && tagger && tagger->has_aux()) {
      for (size_t i = 0; i < sentence.size(); ++i)
        sentence[i].morph = tagger->aux().predict(forms, i, sentence[i].pos);
    } else {
      static const Lexicon kEmptyLexicon;
      const Lexicon& lex = lexicon ? *lexicon : kEmptyLexicon;
      for (auto& tok : sentence)
        tok.morph = project_token_morph(tok, lex, *maps);
    }
    corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

}  // namespace classica
