export type Lang = "en" | "nl";

/** UI chrome strings. Both catalogs must carry the same keys. */
const UI: Record<Lang, Record<string, string>> = {
  en: {
    "app.title": "Practice",
    "register.heading": "Welcome",
    "register.prompt": "Choose a login name to start practising.",
    "register.placeholder": "login name",
    "register.submit": "Start",
    "mastery.heading": "How skilled are you already?",
    "mastery.prompt":
      "Drag the slider to the level that matches your current skill, then confirm.",
    "mastery.submit": "Confirm level",
    "explain.continue": "Continue",
    "explain.global-intro":
      "You will practise in short series of exercises. Answer each question; your mastery level is tracked as you go.",
    "explain.control-explainer":
      "After each series you can nudge the difficulty of the next one: easier if you want more confidence, harder if you want more challenge.",
    "series.heading": "Series {n}",
    "series.topic.label": "Topic",
    "series.topic.submit": "Get exercises",
    "series.practice_explainer":
      "The system automatically picks the exercises that best match your current mastery level.",
    "series.progress": "Question {i} of {n}",
    "answer.correct": "Correct!",
    "answer.incorrect": "Not quite.",
    "answer.next": "Next",
    "steer.heading": "Steer the next series",
    "steer.prompt": "Where should the next series sit?",
    "steer.easier": "Easier",
    "steer.harder": "Harder",
    "steer.submit": "Apply",
    "impact.heading": "What your steering did",
    "impact.explainer":
      "The chart below shows how your mastery level has evolved. Solid segments come from your answers, dashed segments from your own steering.",
    "impact.latest": "Last series moved your level by {answers}; your steering added {steer}.",
    "impact.continue": "Continue",
    "quest.heading": "A few questions before you finish",
    "quest.prompt": "Rate every statement from 1 (strongly disagree) to 7 (strongly agree).",
    "quest.trust.label": "What would make you trust or distrust this system? (required)",
    "quest.remarks.label": "Anything else you want to share? (optional)",
    "quest.submit": "Send answers",
    "quest.missing": "Please answer the highlighted items first.",
    "free.heading": "Thanks! Keep practising as long as you like.",
    "free.continue": "More exercises",
    "error.generic": "Something went wrong",
    "chart.caption": "Mastery over time",
  },
  nl: {
    "app.title": "Oefenen",
    "register.heading": "Welkom",
    "register.prompt": "Kies een inlognaam om te beginnen met oefenen.",
    "register.placeholder": "inlognaam",
    "register.submit": "Starten",
    "mastery.heading": "Hoe vaardig ben je al?",
    "mastery.prompt":
      "Sleep de schuif naar het niveau dat bij je past en bevestig daarna.",
    "mastery.submit": "Niveau bevestigen",
    "explain.continue": "Verder",
    "explain.global-intro":
      "Je oefent in korte reeksen opgaven. Beantwoord elke vraag; je beheersingsniveau wordt ondertussen bijgehouden.",
    "explain.control-explainer":
      "Na elke reeks kun je de moeilijkheid van de volgende bijsturen: makkelijker voor meer vertrouwen, moeilijker voor meer uitdaging.",
    "series.heading": "Reeks {n}",
    "series.topic.label": "Onderwerp",
    "series.topic.submit": "Opgaven ophalen",
    "series.practice_explainer":
      "Het systeem kiest automatisch de opgaven die het best passen bij je huidige beheersingsniveau.",
    "series.progress": "Vraag {i} van {n}",
    "answer.correct": "Goed!",
    "answer.incorrect": "Helaas, dat klopt niet.",
    "answer.next": "Volgende",
    "steer.heading": "Stuur de volgende reeks bij",
    "steer.prompt": "Hoe moet de volgende reeks aanvoelen?",
    "steer.easier": "Makkelijker",
    "steer.harder": "Moeilijker",
    "steer.submit": "Toepassen",
    "impact.heading": "Wat je bijsturen deed",
    "impact.explainer":
      "De grafiek hieronder toont hoe je beheersingsniveau zich ontwikkelde. Doorgetrokken stukken komen van je antwoorden, gestreepte stukken van je eigen bijsturing.",
    "impact.latest": "De laatste reeks veranderde je niveau met {answers}; je bijsturing voegde {steer} toe.",
    "impact.continue": "Verder",
    "quest.heading": "Nog een paar vragen voor je klaar bent",
    "quest.prompt": "Beoordeel elke stelling van 1 (zeer oneens) tot 7 (zeer eens).",
    "quest.trust.label": "Wat zou je vertrouwen in dit systeem vergroten of verkleinen? (verplicht)",
    "quest.remarks.label": "Wil je verder nog iets kwijt? (optioneel)",
    "quest.submit": "Antwoorden versturen",
    "quest.missing": "Beantwoord eerst de gemarkeerde items.",
    "free.heading": "Bedankt! Blijf oefenen zolang je wilt.",
    "free.continue": "Meer opgaven",
    "error.generic": "Er ging iets mis",
    "chart.caption": "Beheersing door de tijd",
  },
};

/** Questionnaire prompts, one per item id. Q19, Q20 and Q25 are worded
    negatively on purpose; the server reverse-scores them. */
export const QUESTIONNAIRE_ITEMS: Record<Lang, Record<string, string>> = {
  en: {
    Q1: "The system knows its subject well.",
    Q2: "The exercises I got were appropriate for me.",
    Q3: "The system is good at estimating my level.",
    Q4: "The system acts in my interest.",
    Q5: "The system wants me to learn, not just to finish.",
    Q6: "The system treats me fairly.",
    Q7: "The system behaves consistently.",
    Q8: "The system does what it says it does.",
    Q9: "I can rely on how the system operates.",
    Q10: "Overall, I trust this system.",
    Q11: "I would follow the system's recommendations.",
    Q12: "I feel comfortable depending on this system.",
    Q13: "I would use this system again for practising.",
    Q14: "I would recommend this system to a fellow student.",
    Q15: "I understand why the system picked my exercises.",
    Q16: "The system is open about how it works.",
    Q17: "It is clear to me what the system does with my answers.",
    Q18: "I felt in charge while practising.",
    Q19: "The system decided too much for me.",
    Q20: "I had too little influence on what I practised.",
    Q21: "The system let me express what I wanted to practise.",
    Q22: "Indicating my starting level was easy.",
    Q23: "The starting level I gave was taken seriously.",
    Q24: "Adjusting the difficulty between series was easy.",
    Q25: "My adjustments made no noticeable difference.",
    Q26: "I could correct the system when it misjudged me.",
    Q27: "The difficulty I asked for is the difficulty I got.",
    Q28: "Changing my earlier choices was straightforward.",
    Q29: "The system responded promptly to my adjustments.",
    Q30: "After steering, the next series matched my request.",
    Q31: "I knew at every moment how to change the difficulty.",
  },
  nl: {
    Q1: "Het systeem kent zijn vakgebied goed.",
    Q2: "De opgaven die ik kreeg pasten bij mij.",
    Q3: "Het systeem schat mijn niveau goed in.",
    Q4: "Het systeem handelt in mijn belang.",
    Q5: "Het systeem wil dat ik leer, niet alleen dat ik klaar ben.",
    Q6: "Het systeem behandelt me eerlijk.",
    Q7: "Het systeem gedraagt zich voorspelbaar.",
    Q8: "Het systeem doet wat het zegt te doen.",
    Q9: "Ik kan erop rekenen hoe het systeem werkt.",
    Q10: "Alles bij elkaar vertrouw ik dit systeem.",
    Q11: "Ik zou de aanbevelingen van het systeem opvolgen.",
    Q12: "Ik durf op dit systeem te leunen.",
    Q13: "Ik zou dit systeem opnieuw gebruiken om te oefenen.",
    Q14: "Ik zou dit systeem aanraden aan een medestudent.",
    Q15: "Ik begrijp waarom het systeem mijn opgaven koos.",
    Q16: "Het systeem is open over hoe het werkt.",
    Q17: "Het is mij duidelijk wat het systeem met mijn antwoorden doet.",
    Q18: "Ik voelde me de baas tijdens het oefenen.",
    Q19: "Het systeem besliste te veel voor mij.",
    Q20: "Ik had te weinig invloed op wat ik oefende.",
    Q21: "Het systeem liet me aangeven wat ik wilde oefenen.",
    Q22: "Mijn startniveau aangeven was makkelijk.",
    Q23: "Het startniveau dat ik opgaf werd serieus genomen.",
    Q24: "De moeilijkheid bijstellen tussen reeksen was makkelijk.",
    Q25: "Mijn bijstellingen maakten geen merkbaar verschil.",
    Q26: "Ik kon het systeem corrigeren als het mij verkeerd inschatte.",
    Q27: "De moeilijkheid die ik vroeg is de moeilijkheid die ik kreeg.",
    Q28: "Eerdere keuzes aanpassen ging eenvoudig.",
    Q29: "Het systeem reageerde vlot op mijn bijstellingen.",
    Q30: "Na het bijsturen paste de volgende reeks bij mijn verzoek.",
    Q31: "Ik wist op elk moment hoe ik de moeilijkheid kon aanpassen.",
  },
};

/** Display names for the mastery levels the server reports. Keys are the
    exact label strings the API uses. */
export const LEVEL_NAMES: Record<Lang, Record<string, string>> = {
  en: {
    novice: "novice",
    "advanced beginner": "advanced beginner",
    competent: "competent",
    proficient: "proficient",
    expert: "expert",
  },
  nl: {
    novice: "beginner",
    "advanced beginner": "gevorderde beginner",
    competent: "bekwaam",
    proficient: "vaardig",
    expert: "expert",
  },
};

export const LIKERT_LABELS: Record<Lang, readonly string[]> = {
  en: [
    "strongly disagree",
    "disagree",
    "somewhat disagree",
    "neutral",
    "somewhat agree",
    "agree",
    "strongly agree",
  ],
  nl: [
    "zeer oneens",
    "oneens",
    "enigszins oneens",
    "neutraal",
    "enigszins eens",
    "eens",
    "zeer eens",
  ],
};

export function t(lang: Lang, key: string, vars?: Record<string, string | number>): string {
  const catalog = UI[lang];
  let text = catalog[key];
  if (text === undefined) throw new Error(`missing string: ${lang}/${key}`);
  for (const [name, value] of Object.entries(vars ?? {})) {
    text = text.replace(`{${name}}`, String(value));
  }
  return text;
}

export function uiKeys(lang: Lang): string[] {
  return Object.keys(UI[lang]).sort();
}
