import pytest

from veritas.pipelines.prompts import PromptName, PromptTemplate, load_prompt


def test_question_prompt_contains_the_pinned_instruction():
    template = load_prompt(PromptName.QUESTION_GEN)
    assert "generate 1 question" in template.text
    assert "quick search box" in template.text
    assert template.text.count("{headline}") == 1


def test_fake_headline_prompt_contains_the_pinned_instruction():
    template = load_prompt(PromptName.FAKE_HEADLINE_GEN)
    assert "Sentence negation, Number swaps, Replacing Named Entities" in template.text
    assert "only the generated fake news headline" in template.text
    assert template.text.count("{headline}") == 1


def test_render_substitutes_once():
    template = load_prompt(PromptName.QUESTION_GEN)
    rendered = template.render("India wins 2023 ICC Men's Cricket World Cup")
    assert "India wins 2023 ICC Men's Cricket World Cup" in rendered
    assert "{headline}" not in rendered


def test_template_rejects_missing_placeholder():
    with pytest.raises(ValueError):
        PromptTemplate(PromptName.QUESTION_GEN, "no placeholder at all")


def test_template_rejects_duplicate_placeholder():
    with pytest.raises(ValueError):
        PromptTemplate(PromptName.QUESTION_GEN, "{headline} and {headline}")
