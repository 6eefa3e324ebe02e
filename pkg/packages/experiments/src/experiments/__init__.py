"""Study orchestration: n-gram distance profiles and leave-one-chapter-out classification."""
